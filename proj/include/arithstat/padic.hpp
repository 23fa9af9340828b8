#pragma once

// Hilbert symbols, square roots in Q_p, and the biquadratic algebra Q(sqrt a, sqrt b).

#include <array>
#include <optional>
#include <vector>

#include "arithstat/arith.hpp"

namespace arithstat {

constexpr u64 kInfinity = 0;  // place argument for the real place

int hilbert_symbol(const Rational& a, const Rational& b, u64 place);
// Independent check: search for a primitive solution of z^2 = a x^2 + b y^2
// modulo p^3 (p odd) or 2^5, which Hensel's lemma lifts.
int hilbert_symbol_search(const Rational& a, const Rational& b, u64 p);
// Places where the symbol of (a, b) can be nontrivial: infinity, 2, primes dividing num/den.
std::vector<u64> relevant_places(const Rational& a, const Rational& b);

bool witt_condition(i64 a, i64 b);

// An element p^valuation * unit of Q_p known modulo p^{valuation + precision}.
struct PAdicApprox {
    u64 p = 0;
    int valuation = 0;
    BigInt unit;  // in [0, p^precision), coprime to p
    int precision = 0;

    BigInt modulus() const;
    bool is_square() const;  // needs precision >= 3 at p = 2
};

// Any nonzero rational, unit part to precision K.
PAdicApprox to_padic(const Rational& t, u64 p, int K);
std::optional<PAdicApprox> sqrt_in_Qp(const Rational& t, u64 p, int K = 32);

// x = c0 + c1 sqrt(a) + c2 sqrt(b) + c3 sqrt(a) sqrt(b).
struct BiquadraticElement {
    i64 a = 0, b = 0;
    std::array<Rational, 4> c{};

    BiquadraticElement() = default;
    BiquadraticElement(i64 a_, i64 b_, std::array<Rational, 4> coords);

    BiquadraticElement operator+(const BiquadraticElement& o) const;
    BiquadraticElement operator-(const BiquadraticElement& o) const;
    BiquadraticElement operator*(const BiquadraticElement& o) const;
    BiquadraticElement scaled(const Rational& r) const;
    BiquadraticElement conj_a() const;  // sqrt a -> -sqrt a
    BiquadraticElement conj_b() const;  // sqrt b -> -sqrt b
    bool is_zero() const;
    bool operator==(const BiquadraticElement& o) const = default;
    std::string to_string() const;
};

// Images under the four embeddings into Q_p, ordered by signs (+,+), (+,-), (-,+), (-,-)
// of (sqrt a, sqrt b).
std::vector<PAdicApprox> embed_biquadratic(const BiquadraticElement& x, u64 p, int K = 32);

// n = 4^k (8m + 7) test; n >= 0.
bool is_sum_of_three_squares(const BigInt& n);
// Positive rationals whose squarefree kernel is a sum of three squares.
bool is_sum_of_three_rational_squares(const BigInt& n);

}  // namespace arithstat
