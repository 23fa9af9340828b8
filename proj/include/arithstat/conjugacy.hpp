#pragma once

// Conjugacy classes of S_n, Sato-Tate measures of finite groups and their
// indicators.

#include <string>
#include <vector>

#include "arithstat/arith.hpp"
#include "arithstat/symbols.hpp"

namespace arithstat {

struct ConjugacyClassData {
    CycleType cycle_type;
    BigInt size;
    int char_std;  // value of the standard (n-1)-dimensional character
    int ambient_n;
};

std::vector<ConjugacyClassData> conjugacy_classes(int n);
BigInt class_size(const CycleType& tau);
int char_std(const CycleType& tau);
CycleType power_class(const CycleType& tau, int k);

// Eigenangles in [0,1): e^{2 pi i theta}.
struct SpectralPoint {
    std::vector<Rational> angles;  // sorted

    SpectralPoint() = default;
    explicit SpectralPoint(std::vector<Rational> a);
    std::string to_string() const;

    friend bool operator==(const SpectralPoint&, const SpectralPoint&) = default;
    friend auto operator<=>(const SpectralPoint& x, const SpectralPoint& y) { return x.angles <=> y.angles; }
};

SpectralPoint spectral_point(const CycleType& tau);

struct SatoTateMeasure {
    int dimension = 0;
    std::vector<std::pair<SpectralPoint, Rational>> atoms;
};

struct Indicators {
    Rational i1, i2, i3;
};

using Permutation = std::vector<int>;  // images of 0..n-1

struct GroupSpec {
    enum class Kind { SnStandard, C3inS3, S2inS3, D4inS4, Q8Dim2, Generators } kind = Kind::SnStandard;
    int n = 0;
    std::vector<Permutation> generators;
};

// "Sn_standard(5)", "C3_in_S3", "S2_in_S3", "D4_in_S4", "Q8_dim2", or
// "S4:(1,2,3,4);(1,3)" (degree, then generators in 1-based cycle notation).
GroupSpec parse_group_spec(const std::string& text);

std::vector<Permutation> group_closure(int n, const std::vector<Permutation>& gens, std::size_t bound = 1000000);
CycleType cycle_type_of(const Permutation& g);

SatoTateMeasure subgroup_pushforward(const GroupSpec& spec);
Indicators indicators(const SatoTateMeasure& mu);

Rational two_torsion_proportion(int n);

}  // namespace arithstat
