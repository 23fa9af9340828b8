#pragma once

// Pairs of ternary quadratic forms (quartic rings) and quadruples of 5x5
// alternating matrices (quintic rings).

#include <array>
#include <map>
#include <string>
#include <vector>

#include "arithstat/arith.hpp"
#include "arithstat/cubicforms.hpp"
#include "arithstat/symbols.hpp"

namespace arithstat {

using Mat3 = std::array<std::array<i64, 3>, 3>;

// Ternary quadratic form a11 x^2 + a22 y^2 + a33 z^2 + a12 xy + a13 xz + a23 yz.
struct TernaryForm {
    i64 a11 = 0, a22 = 0, a33 = 0, a12 = 0, a13 = 0, a23 = 0;
    Mat3 doubled_gram() const;
    static TernaryForm from_doubled_gram(const Mat3& g);
    i128 eval(i64 x, i64 y, i64 z) const;
};

// Two forms, held as doubled Gram matrices 2A, 2B.
struct TernaryPair {
    Mat3 A2{}, B2{};

    TernaryPair() = default;
    TernaryPair(const TernaryForm& a, const TernaryForm& b);
    TernaryForm A() const { return TernaryForm::from_doubled_gram(A2); }
    TernaryForm B() const { return TernaryForm::from_doubled_gram(B2); }
    // (A, B) -> (M^T A M, M^T B M)
    TernaryPair transformed(const Mat3& M) const;
};

// 4 det(Ax - By) = det(2A x - 2B y) / 2.
BinaryCubicForm resolvent_cubic(const TernaryPair& P);
i128 disc_pair(const TernaryPair& P);

// The pair whose common zeros are (1 : t : t^2) with t a root of the monic quartic
// T^4 + b T^3 + c T^2 + d T + e.
TernaryPair pair_from_quartic(i64 b, i64 c, i64 d, i64 e);

// Res_z(A, B) as a binary quartic, coefficients of x^4, x^3 y, ..., y^4.
std::array<i128, 5> projection_quartic(const TernaryPair& P);

// Fixed coordinate-change schedule (identity first).
const std::vector<Mat3>& projection_schedule();

// Orbit type of the four intersection points over F_p, p odd.  Projections
// are tried along the schedule; if none separates the points the answer
// comes from the point census.
CycleType splitting_symbol_pair(const TernaryPair& P, u64 p);
// Point census of A = B = 0 over P^2(F_{p^k}), k <= 4.
CycleType pair_census_type(const TernaryPair& P, u64 p);
std::array<u64, 4> pair_census_counts(const TernaryPair& P, u64 p);

CycleType quartic_to_cubic_splitting(const CycleType& t4);

struct PairDensity {
    u64 p = 0;
    std::map<CycleType, u64> counts;
    u64 degenerate = 0;  // Δ = 0 mod p
    u64 total = 0;
};
PairDensity brute_force_pair_density(u64 p, bool parallel = true);

// Galois group label: S4, A4, D4, C4, V4 or reducible.
std::string classify_quartic_group(const TernaryPair& P);
// The same for a monic integer quartic.
std::string classify_monic_quartic(const BigInt& b, const BigInt& c, const BigInt& d, const BigInt& e);

// Quadruples of alternating 5x5 matrices.
using Alt5 = std::array<std::array<i64, 5>, 5>;
struct AlternatingQuadruple {
    std::array<Alt5, 4> M{};
};
// Coefficients of x^2, y^2, z^2, t^2, xy, xz, xt, yz, yt, zt.
using Quadric4 = std::array<i64, 10>;

i64 pfaffian4(const std::array<std::array<i64, 4>, 4>& N);
// Sub-Pfaffian i is taken on the rows and columns other than i.
std::array<Quadric4, 5> pfaffian_quadrics(const AlternatingQuadruple& Q);

// Points on all five quadrics over P^3(F_{p^k}), k = 1..5.
std::array<u64, 5> quintic_census_counts(const AlternatingQuadruple& Q, u64 p);
// Slow oracle: forms M(v) over F_{p^k} and takes its sub-Pfaffians directly.
std::array<u64, 5> quintic_census_counts_naive(const AlternatingQuadruple& Q, u64 p);
// Orbit type from census counts; DegenerateScheme unless exactly five points.
CycleType quintic_type_from_counts(const std::array<u64, 5>& counts);
CycleType splitting_symbol_quintic(const AlternatingQuadruple& Q, u64 p);

AlternatingQuadruple random_quadruple(u64 p, u64 seed, u64 index);

struct QuinticMonteCarlo {
    u64 p = 0;
    u64 seed = 0;
    u64 draws = 0;
    u64 degenerate = 0;
    std::map<CycleType, u64> counts;
    u64 nondegenerate() const;
};
// Draws samples in index order until `target` nondegenerate ones are found.
QuinticMonteCarlo quintic_monte_carlo(u64 p, u64 target, u64 seed, bool parallel = true);

}  // namespace arithstat
