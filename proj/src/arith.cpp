#include "arithstat/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/miller_rabin.hpp>

namespace arithstat {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ZeroDiscriminant: return "ZeroDiscriminant";
        case ErrorKind::NotPMaximal: return "NotPMaximal";
        case ErrorKind::NotSplit: return "NotSplit";
        case ErrorKind::EmbeddingDisagreement: return "EmbeddingDisagreement";
        case ErrorKind::Undecided2Adic: return "Undecided2Adic";
        case ErrorKind::InsufficientPrimeCache: return "InsufficientPrimeCache";
        case ErrorKind::NoSeparatingProjection: return "NoSeparatingProjection";
        case ErrorKind::DegenerateScheme: return "DegenerateScheme";
        case ErrorKind::TotallyRamifiedSomewhere: return "TotallyRamifiedSomewhere";
        case ErrorKind::InsufficientTabulation: return "InsufficientTabulation";
        case ErrorKind::RamifiedInput: return "RamifiedInput";
        case ErrorKind::ClosureTooLarge: return "ClosureTooLarge";
        case ErrorKind::NonNormalized: return "NonNormalized";
        case ErrorKind::EmptyFamily: return "EmptyFamily";
        case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
        case ErrorKind::FormatMismatch: return "FormatMismatch";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 invmod(u64 a, u64 m) {
    i128 t = 0, new_t = 1;
    i128 r = m, new_r = a % m;
    while (new_r != 0) {
        i128 q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (r != 1) fail(ErrorKind::InvalidArgument, "invmod: not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

u64 mod_big(const BigInt& v, u64 m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n <= std::numeric_limits<u64>::max()) return is_prime_u64(static_cast<u64>(n));
    return boost::multiprecision::miller_rabin_test(n, 32);
}

bool is_prime_small(u64 n) { return is_prime_u64(n); }

std::vector<u64> primes_up_to(u64 bound) {
    std::vector<u64> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(bound + 1, false);
    for (u64 i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

int legendre(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    u64 r = powmod(a, (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

int legendre_signed(i64 a, u64 p) { return legendre(mod_signed(a, p), p); }

std::optional<u64> sqrt_mod_prime(u64 a, u64 p) {
    a %= p;
    if (p == 2 || a == 0) return a;
    if (legendre(a, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (legendre(z, p) != -1) ++z;
    u64 m = static_cast<u64>(s);
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

BigInt isqrt_big(const BigInt& n) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

bool is_square_u64(u64 n) {
    u64 r = isqrt_u64(n);
    return r * r == n;
}

bool is_square_big(const BigInt& n) {
    if (n < 0) return false;
    BigInt r = isqrt_big(n);
    return r * r == n;
}

u64 icbrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::cbrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

int valuation(const BigInt& n, u64 p) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "valuation of zero");
    BigInt m = n;
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

int valuation_u64(u64 n, u64 p) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 seed = 1; seed < 64; ++seed) {
        u64 c = seed;
        u64 y = seed + 1, x = y, g = 1, q = 1, ys = y;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        const u64 block = 128;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(block, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += block;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1 && r < (u64{1} << 26));
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

namespace {

void factor_u64_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        if (n % p == 0) {
            out.push_back(p);
            factor_u64_into(n / p, out);
            return;
        }
    }
    u64 d = pollard_rho(n);
    if (d == 0) fail(ErrorKind::InvalidArgument, "pollard_rho failed on " + std::to_string(n));
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

// Pollard-Brent over big integers with a bounded number of steps.
BigInt pollard_rho_big(const BigInt& n) {
    for (unsigned c = 1; c < 8; ++c) {
        BigInt y = 2, x = 2, q = 1, g = 1, ys = 2;
        auto f = [&](const BigInt& v) { return (v * v + c) % n; };
        u64 r = 1;
        const u64 block = 64;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(block, r - k); ++i) {
                    y = f(y);
                    q = (q * (x > y ? BigInt(x - y) : BigInt(y - x))) % n;
                }
                g = boost::multiprecision::gcd(q, n);
                k += block;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1 && r < (u64{1} << 21));
        if (g == n) {
            g = 1;
            for (int guard = 0; g == 1 && guard < (1 << 22); ++guard) {
                ys = f(ys);
                g = boost::multiprecision::gcd(x > ys ? BigInt(x - ys) : BigInt(ys - x), n);
            }
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

// Splits a cofactor free of small primes into primes, recording what resists.
void split_big(const BigInt& n, std::vector<BigInt>& primes, BigInt& unresolved) {
    if (n == 1) return;
    if (n <= std::numeric_limits<u64>::max()) {
        std::vector<u64> rest;
        factor_u64_into(static_cast<u64>(n), rest);
        for (u64 p : rest) primes.emplace_back(p);
        return;
    }
    if (is_probable_prime(n)) {
        primes.push_back(n);
        return;
    }
    if (is_square_big(n)) {
        BigInt r = isqrt_big(n);
        split_big(r, primes, unresolved);
        split_big(r, primes, unresolved);
        return;
    }
    BigInt d = pollard_rho_big(n);
    if (d == 0) {
        unresolved *= n;
        return;
    }
    split_big(d, primes, unresolved);
    split_big(n / d, primes, unresolved);
}

std::vector<std::pair<BigInt, int>> collect(std::vector<BigInt> primes) {
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<BigInt, int>> result;
    for (const auto& p : primes) {
        if (!result.empty() && result.back().first == p) {
            ++result.back().second;
        } else {
            result.emplace_back(p, 1);
        }
    }
    return result;
}

}  // namespace

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    std::vector<u64> primes;
    while (n % 2 == 0 && n > 0) {
        primes.push_back(2);
        n /= 2;
    }
    for (u64 p = 3; p < 1000 && p * p <= n; p += 2) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    factor_u64_into(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<u64, int>> result;
    for (u64 p : primes) {
        if (!result.empty() && result.back().first == p) {
            ++result.back().second;
        } else {
            result.emplace_back(p, 1);
        }
    }
    return result;
}

Factorization factor_big(BigInt n, u64 trial_bound) {
    if (n < 0) n = -n;
    if (n == 0) fail(ErrorKind::InvalidArgument, "factor of zero");
    Factorization result;
    std::vector<BigInt> primes;
    if (n <= std::numeric_limits<u64>::max()) {
        for (auto& [p, e] : factor_u64(static_cast<u64>(n))) {
            result.factors.emplace_back(BigInt(p), e);
        }
        return result;
    }
    auto take = [&](u64 p) {
        while (n % p == 0) {
            primes.emplace_back(p);
            n /= p;
        }
    };
    take(2);
    for (u64 p = 3; p <= trial_bound; p += 2) {
        if (BigInt(p) * p > n) break;
        take(p);
        if (n <= std::numeric_limits<u64>::max()) break;
    }
    if (n > 1) {
        BigInt unresolved = 1;
        split_big(n, primes, unresolved);
        if (unresolved != 1) {
            result.complete = false;
            result.unresolved = unresolved;
        }
    }
    result.factors = collect(std::move(primes));
    return result;
}

SquareDivisors square_divisor_primes(const BigInt& n, u64 trial_bound) {
    SquareDivisors out;
    if (n == 0) fail(ErrorKind::InvalidArgument, "square divisors of zero");
    Factorization f = factor_big(n, trial_bound);
    for (auto& [p, e] : f.factors) {
        if (e >= 2) out.primes.push_back(p);
    }
    if (!f.complete) {
        // A cofactor with no prime below the trial bound: a square part is
        // only detectable when the cofactor itself is a perfect square.
        if (is_square_big(f.unresolved)) {
            out.primes.push_back(isqrt_big(f.unresolved));
        } else {
            out.complete = false;
        }
    }
    return out;
}

BigInt squarefree_part(const BigInt& n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "squarefree part of zero");
    Factorization f = factor_big(n);
    if (!f.complete) fail(ErrorKind::InvalidArgument, "cannot factor for squarefree part");
    BigInt s = n < 0 ? -1 : 1;
    for (auto& [p, e] : f.factors) {
        if (e % 2) s *= p;
    }
    return s;
}

BigInt fundamental_discriminant(const BigInt& n) {
    if (n == 0 || is_square_big(n)) fail(ErrorKind::InvalidArgument, "no quadratic field for a square");
    BigInt s = squarefree_part(n);
    BigInt r = s % 4;
    if (r < 0) r += 4;
    return r == 1 ? s : 4 * s;
}

bool is_fundamental_discriminant(i64 d) {
    if (d == 0 || d == 1) return false;
    auto squarefree = [](i64 m) {
        u64 a = static_cast<u64>(m < 0 ? -m : m);
        for (auto& [p, e] : factor_u64(a)) {
            if (e > 1) return false;
        }
        return true;
    };
    i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return squarefree(d);
    if (r != 0) return false;
    i64 m = d / 4;
    i64 rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && squarefree(m);
}

int mobius(u64 n) {
    int sign = 1;
    for (auto& [p, e] : factor_u64(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

BigInt binomial(const BigInt& n, u64 k) {
    if (n < 0 || BigInt(k) > n) return 0;
    BigInt result = 1;
    for (u64 i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;
    }
    return result;
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt pow_big(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

}  // namespace arithstat
