#pragma once

// Monic integer polynomials and polynomials over F_p.

#include <optional>
#include <vector>

#include "arithstat/arith.hpp"
#include "arithstat/symbols.hpp"

namespace arithstat {

// Dense polynomial over F_p, coefficient i of x^i; empty vector is zero.
using FpPoly = std::vector<u64>;

namespace fp {

void trim(FpPoly& f);
int deg(const FpPoly& f);  // -1 for zero
FpPoly add(const FpPoly& f, const FpPoly& g, u64 p);
FpPoly sub(const FpPoly& f, const FpPoly& g, u64 p);
FpPoly mul(const FpPoly& f, const FpPoly& g, u64 p);
FpPoly scale(const FpPoly& f, u64 c, u64 p);
void divmod(const FpPoly& f, const FpPoly& g, u64 p, FpPoly& q, FpPoly& r);
FpPoly rem(const FpPoly& f, const FpPoly& g, u64 p);
FpPoly quo(const FpPoly& f, const FpPoly& g, u64 p);
FpPoly monic(const FpPoly& f, u64 p);
FpPoly gcd(FpPoly f, FpPoly g, u64 p);  // monic, or zero
FpPoly derivative(const FpPoly& f, u64 p);
FpPoly mulmod(const FpPoly& f, const FpPoly& g, const FpPoly& m, u64 p);
FpPoly powmod(FpPoly base, u64 e, const FpPoly& m, u64 p);
FpPoly powmod_big(FpPoly base, const BigInt& e, const FpPoly& m, u64 p);
u64 eval(const FpPoly& f, u64 x, u64 p);

struct Factor {
    FpPoly poly;  // monic irreducible
    int mult;
};

// Complete factorization into monic irreducibles, deterministic, sorted by
// (degree, coefficients).  Input must be nonzero; the leading coefficient is dropped.
std::vector<Factor> factor(const FpPoly& f, u64 p);

// Squarefree factors of each degree (distinct-degree factorization).
std::vector<std::pair<FpPoly, int>> distinct_degree(const FpPoly& f, u64 p);

// Multiset of (multiplicity, degree) without splitting equal-degree products.
std::vector<std::pair<int, int>> factor_shape(const FpPoly& f, u64 p);

bool is_irreducible(const FpPoly& f, u64 p);

}  // namespace fp

// f(T) = T^n + a_1 T^{n-1} + ... + a_n.
struct MonicPoly {
    std::vector<BigInt> a;  // a[0] = a_1, ..., a[n-1] = a_n

    MonicPoly() = default;
    explicit MonicPoly(std::vector<BigInt> coeffs);
    MonicPoly(std::initializer_list<long long> coeffs);

    int degree() const { return static_cast<int>(a.size()); }
    BigInt coeff_low(int i) const;  // coefficient of T^i
    FpPoly mod(u64 p) const;
    std::string to_string() const;
};

BigInt discriminant_monic(const MonicPoly& f);
// Resultant of two integer polynomials given low-to-high.
BigInt resultant(const std::vector<BigInt>& f, const std::vector<BigInt>& g);
BigInt determinant(std::vector<std::vector<BigInt>> m);

// h(f) < x, evaluated as |a_i|^{n(n-1)} < x^i for every i.
bool height_below(const MonicPoly& f, const BigInt& x);

struct FpFactorization {
    u64 p;
    std::vector<fp::Factor> factors;
};
FpFactorization factor_mod_p(const MonicPoly& f, u64 p);

bool is_p_maximal(const MonicPoly& f, u64 p);

// Every monic degree-n polynomial mod p^2; rho(p) = maximal / total.
struct MaximalCensus {
    u64 total = 0;
    u64 maximal = 0;
};
MaximalCensus maximal_census_mod_p2(int n, u64 p);
SplittingSymbol splitting_symbol(const MonicPoly& f, u64 p);
// No maximality or discriminant check; the shape of f mod p.
SplittingSymbol splitting_shape(const FpPoly& f, u64 p);

// Number of degree-k monic irreducibles over F_p.
BigInt irreducible_count(u64 p, int k);
BigInt exact_type_count(int n, u64 p, const CycleType& tau);

int theta_coefficient(const SplittingSymbol& s, int m);

struct EulerCheck {
    bool ok = true;
    int first_bad = -1;  // first failing coefficient index
    std::string what;
};
EulerCheck euler_factor_check(const SplittingSymbol& s, int precision);

// Irreducibility over Q for degree <= 5 (certificate mod small primes, then
// rational-root and quadratic-factor search).
bool is_irreducible_over_Q(const MonicPoly& f);

}  // namespace arithstat
