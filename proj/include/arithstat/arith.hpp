#pragma once

// Integer and modular arithmetic shared by every module: big integers,
// rationals, primality, factoring, square roots modulo primes.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace arithstat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using i128 = __int128;
using u128 = unsigned __int128;
using u64 = std::uint64_t;
using i64 = std::int64_t;

enum class ErrorKind {
    InvalidArgument,
    ZeroDiscriminant,
    NotPMaximal,
    NotSplit,
    EmbeddingDisagreement,
    Undecided2Adic,
    InsufficientPrimeCache,
    NoSeparatingProjection,
    DegenerateScheme,
    TotallyRamifiedSomewhere,
    InsufficientTabulation,
    RamifiedInput,
    ClosureTooLarge,
    NonNormalized,
    EmptyFamily,
    InsufficientPrecision,
    FormatMismatch,
    Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

    // Errors that signal a broken mathematical invariant rather than bad input.
    bool is_invariant_violation() const noexcept {
        return kind_ == ErrorKind::EmbeddingDisagreement || kind_ == ErrorKind::Undecided2Adic;
    }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 powmod(u64 base, u64 exp, u64 m);
u64 invmod(u64 a, u64 m);  // requires gcd(a, m) = 1

// Least nonnegative residue of a signed value.
inline u64 mod_signed(i64 v, u64 m) {
    i64 r = v % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}
inline u64 mod_signed128(i128 v, u64 m) {
    i128 r = v % static_cast<i128>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i128>(m) : r);
}
u64 mod_big(const BigInt& v, u64 m);

bool is_prime_u64(u64 n);
bool is_probable_prime(const BigInt& n);
std::vector<u64> primes_up_to(u64 bound);
bool is_prime_small(u64 n);

// Legendre symbol (a/p) for odd prime p: -1, 0 or 1.
int legendre(u64 a, u64 p);
int legendre_signed(i64 a, u64 p);

// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
std::optional<u64> sqrt_mod_prime(u64 a, u64 p);

u64 isqrt_u64(u64 n);
BigInt isqrt_big(const BigInt& n);
bool is_square_u64(u64 n);
bool is_square_big(const BigInt& n);
u64 icbrt_u64(u64 n);

int valuation(const BigInt& n, u64 p);  // n != 0
int valuation_u64(u64 n, u64 p);        // n != 0

struct Factorization {
    std::vector<std::pair<BigInt, int>> factors;  // prime, exponent, ascending
    bool complete = true;                         // false if a composite cofactor resisted
    BigInt unresolved = 1;                        // product of unresolved composite cofactors
};

// Pollard-Brent with deterministic seeds; returns a nontrivial factor or 0.
u64 pollard_rho(u64 n);
std::vector<std::pair<u64, int>> factor_u64(u64 n);

// Trial division to `trial_bound`, then one deterministic rho round on the
// cofactor.  Sign is dropped.
Factorization factor_big(BigInt n, u64 trial_bound = 1000000);

// Primes p with p^2 | n.  `complete` mirrors Factorization::complete.
struct SquareDivisors {
    std::vector<BigInt> primes;
    bool complete = true;
};
SquareDivisors square_divisor_primes(const BigInt& n, u64 trial_bound = 1000000);

BigInt squarefree_part(const BigInt& n);  // sign kept
// Fundamental discriminant D with n / D a square (n != 0, n not a square).
BigInt fundamental_discriminant(const BigInt& n);
bool is_fundamental_discriminant(i64 d);

int mobius(u64 n);
BigInt binomial(const BigInt& n, u64 k);
BigInt factorial(unsigned n);
BigInt pow_big(const BigInt& base, unsigned exp);

std::string rational_to_string(const Rational& r);  // "num/den" (den may be 1)
Rational rational_from_string(const std::string& s);

// Reproducible 64-bit stream: value i depends only on (seed, i).
inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
inline u64 counter_random(u64 seed, u64 index, u64 lane = 0) {
    return splitmix64(splitmix64(seed ^ (lane * 0xd1b54a32d192ed03ULL)) + index);
}

}  // namespace arithstat
