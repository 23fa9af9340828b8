#pragma once

// One-level density harness: Fejer test functions and the prime sums
// S1, S2, S3, S_ram over a family's splitting statistics.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "arithstat/arith.hpp"
#include "arithstat/family.hpp"
#include "arithstat/symbols.hpp"

namespace arithstat {

constexpr double kMaxSigma = 0.45;

// f(y) = sigma (sin(pi sigma y) / (pi sigma y))^2, fhat(u) = max(0, 1 - |u|/sigma).
struct TestFunction {
    double sigma = 0.25;

    explicit TestFunction(double s);
    double f(double y) const;
    double fhat(double u) const;
    // Fourier transform of f by quadrature, for checking the pair convention.
    double fhat_numeric(double u) const;
};

// theta_K(p^k) read off the splitting symbol of p.
using ThetaFn = std::function<int(const SplittingSymbol&, int)>;
int default_theta(const SplittingSymbol& s, int k);

enum class Symmetry { Sp, SO };
std::string to_string(Symmetry s);
Symmetry parse_symmetry(const std::string& text);

double average_log_conductor(const FamilyStats& stats);
double average_log_conductor(const std::vector<BigInt>& conductors);

struct PrimeSums {
    double S1 = 0, S2 = 0, S3 = 0, S_ram = 0;
    std::vector<std::pair<u64, double>> s1_by_prime;
    double cutoff = 0;  // exp(sigma L)
};
// Sums over p^k <= exp(sigma L), each term weighted
// 2/(L |F|) log p / p^{k/2} fhat(k log p / L) sum_K theta_K(p^k).
PrimeSums prime_sums(const FamilyStats& stats, const TestFunction& tf, const ThetaFn& theta = default_theta);

struct OneLevelReport {
    std::string x;
    double sigma = 0;
    double L = 0;
    u64 family_size = 0;
    PrimeSums sums;
    double D = 0;       // fhat(0) - (S1 + S2 + S3 + S_ram)
    double target = 0;  // 1 -+ sigma/2
    Symmetry symmetry = Symmetry::Sp;
};
OneLevelReport one_level_density(const FamilyStats& stats, double sigma, Symmetry symmetry, const std::string& x,
                                 const ThetaFn& theta = default_theta);

}  // namespace arithstat
