#pragma once

// Quaternionic fields K_q = Q(sqrt(q theta)) over M = Q(sqrt a, sqrt b):
// Witt's criterion, the theta element, twist enumeration, splitting types,
// conductors and the Q8 character.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arithstat/arith.hpp"
#include "arithstat/family.hpp"
#include "arithstat/padic.hpp"
#include "arithstat/symbols.hpp"

namespace arithstat {

// a = al^2+be^2+ga^2, b = la^2+mu^2+nu^2, al la + be mu + ga nu = 0.
struct ThreeSquares {
    std::array<Rational, 3> u;  // (alpha, beta, gamma)
    std::array<Rational, 3> v;  // (lambda, mu, nu)
};

bool is_orthogonal_decomposition(i64 a, i64 b, const ThreeSquares& d);

// Deterministic bounded search, denominators <= D.  Raises InvalidArgument
// when the Witt condition fails; nullopt when nothing is found within D.
std::optional<ThreeSquares> orthogonal_three_squares(i64 a, i64 b, int D = 4);

struct QuaternionParams {
    i64 a = 0, b = 0;
    ThreeSquares decomposition;
    BiquadraticElement theta;

    // Validates squarefreeness, coprimality, the Witt condition and the decomposition.
    QuaternionParams(i64 a_, i64 b_, const ThreeSquares& d);
    // First decomposition in search order whose theta passes validation.
    static QuaternionParams search(i64 a, i64 b, int D = 4);

    BigInt r_ab() const;          // squarefree part of ab
    bool two_unramified() const;  // a, b = 1 mod 4
};

// (1, alpha/a, mu/b, (alpha mu - beta lambda)/(ab)) in the basis 1, sqrt a, sqrt b, sqrt ab.
BiquadraticElement theta_element(i64 a, i64 b, const ThreeSquares& d);

// Norm to Q(sqrt a) written as x + y sqrt a.
std::pair<Rational, Rational> norm_to_Qsqrta(const BiquadraticElement& x);

// Characteristic polynomial of theta over Q (monic quartic, low to high) and
// the polynomial g(T^2) of sqrt(theta).
std::vector<Rational> theta_charpoly(const BiquadraticElement& theta);
std::vector<Rational> sqrt_theta_minpoly(const BiquadraticElement& theta);

// Degree of sqrt(theta) over Q: 8 needs four distinct conjugates and a
// nonsquare image at some completely split prime (checked on up to `witnesses` primes).
struct DegreeCertificate {
    int degree = 0;
    bool conjugates_distinct = false;
    std::vector<u64> nonsquare_primes;
};
DegreeCertificate sqrt_theta_degree(const QuaternionParams& params, int witnesses = 3);

// Splitting of p in M: e, f, g.
struct LocalType {
    int e = 1, f = 1, g = 4;
};
LocalType splitting_in_M(i64 a, i64 b, u64 p);

// 2-adic decision for K_q / M: 0 if 2 is unramified in K_q, 4 otherwise.
// Needs a, b = 1 mod 4.  Precision starts at 2^8 and doubles up to 2^62.
int alpha_2adic(const QuaternionParams& params, i64 q);

SplittingSymbol splitting_in_Kq(const QuaternionParams& params, i64 q, u64 p);

// alpha is -1 when 2 ramifies in M and the 2-part is not decided.
struct ConductorInfo {
    BigInt conductor;
    int alpha = 0;
};
ConductorInfo conductor_Kq(const QuaternionParams& params, i64 q);

int theta_Q8(const SplittingSymbol& s, int k);

bool is_twist_parameter(const QuaternionParams& params, i64 q);

struct TwistRecord {
    i64 q = 1;
    BigInt conductor;
    int alpha = 0;
    std::vector<SymbolCode> codes;  // one per cached prime
};

// Precomputed per-prime data, so that a twist costs one table lookup per prime.
class TwistSplitter {
public:
    TwistSplitter(const QuaternionParams& params, std::vector<u64> primes);
    const std::vector<u64>& primes() const { return primes_; }
    SymbolCode code(i64 q, std::size_t prime_index) const;

private:
    struct PrimeData {
        u64 p;
        LocalType m;
        int theta_class;              // +1 square, -1 nonsquare, 0 unused
        std::vector<std::int8_t> qr;  // Legendre symbol table mod p
        SymbolCode unram_split_sq, unram_split_nonsq, unram_inert, ram_q, fixed;
        bool divides_ab;
    };
    QuaternionParams params_;
    std::vector<u64> primes_;
    std::vector<PrimeData> data_;
};

struct TwistRun {
    FamilyStats stats;
    u64 alpha0 = 0, alpha4 = 0, alpha_undecided = 0;
};

// All twist parameters q = 1 or fundamental discriminants with |q| <= qmax,
// gcd(q, ab) = 1, in increasing (|q|, q) order.
std::vector<i64> twist_parameters(const QuaternionParams& params, i64 qmax);

TwistRun run_twists(const QuaternionParams& params, i64 qmax, u64 pmax, bool parallel = true,
                    const std::function<void(const TwistRecord&)>* visit = nullptr);

// Predicted type frequencies at an odd prime not dividing ab, over
// fundamental discriminants: p/(2(p+1)) each for (1)^8, (2)^4 when p splits
// in M, p/(p+1) for (4)^2 otherwise, ramified 1/(p+1).
std::map<std::string, Rational> twist_predicted(const QuaternionParams& params, u64 p);

}  // namespace arithstat
