#include "arithstat/padic.hpp"

#include <set>
#include <sstream>

namespace arithstat {

namespace {

// Integer in the same square class as the rational.
BigInt square_class_integer(const Rational& r) {
    if (r == 0) fail(ErrorKind::InvalidArgument, "Hilbert symbol of zero");
    return numerator(r) * denominator(r);
}

void split_valuation(const BigInt& n, u64 p, int& v, BigInt& u) {
    v = 0;
    u = n;
    while (u % p == 0) {
        u /= p;
        ++v;
    }
}

int legendre_big(const BigInt& u, u64 p) { return legendre(mod_big(u, p), p); }

}  // namespace

int hilbert_symbol(const Rational& ra, const Rational& rb, u64 place) {
    BigInt a = square_class_integer(ra), b = square_class_integer(rb);
    if (place == kInfinity) return (a < 0 && b < 0) ? -1 : 1;
    u64 p = place;
    int alpha, beta;
    BigInt u, v;
    split_valuation(a, p, alpha, u);
    split_valuation(b, p, beta, v);
    if (p == 2) {
        u64 u8 = mod_big(u, 8), v8 = mod_big(v, 8);
        int eps_u = static_cast<int>(((u8 - 1) / 2) % 2), eps_v = static_cast<int>(((v8 - 1) / 2) % 2);
        int om_u = static_cast<int>(((u8 * u8 - 1) / 8) % 2), om_v = static_cast<int>(((v8 * v8 - 1) / 8) % 2);
        int e = eps_u * eps_v + alpha * om_v + beta * om_u;
        return e % 2 ? -1 : 1;
    }
    int sign = 1;
    if ((static_cast<long long>(alpha) * beta % 2) && ((p - 1) / 2) % 2) sign = -sign;
    if (beta % 2) sign *= legendre_big(u, p);
    if (alpha % 2) sign *= legendre_big(v, p);
    return sign;
}

int hilbert_symbol_search(const Rational& ra, const Rational& rb, u64 p) {
    // Reduce to squarefree representatives so the Hensel bound below applies.
    auto reduce = [p](BigInt n) {
        while (n % (p * p) == 0) n /= p * p;
        return n;
    };
    BigInt a = reduce(square_class_integer(ra)), b = reduce(square_class_integer(rb));
    // After removing p^2 factors the valuations are 0 or 1, but the unit parts
    // may still carry other squares, which do not matter here.
    u64 m = p == 2 ? 32 : p * p * p;
    u64 am = mod_big(a, m), bm = mod_big(b, m);
    std::vector<bool> square(m, false);
    for (u64 z = 0; z < m; ++z) square[z * z % m] = true;
    for (u64 x = 0; x < m; ++x) {
        for (u64 y = 0; y < m; ++y) {
            if (x % p == 0 && y % p == 0) continue;
            u64 rhs = (am * (x * x % m) + bm * (y * y % m)) % m;
            if (square[rhs]) return 1;
        }
    }
    return -1;
}

std::vector<u64> relevant_places(const Rational& ra, const Rational& rb) {
    std::set<u64> places{kInfinity, 2};
    for (const Rational* r : {&ra, &rb}) {
        for (const BigInt& n : {numerator(*r), denominator(*r)}) {
            if (n == 0) fail(ErrorKind::InvalidArgument, "Hilbert symbol of zero");
            auto f = factor_big(n);
            if (!f.complete) fail(ErrorKind::InvalidArgument, "cannot factor Hilbert symbol argument");
            for (auto& [q, e] : f.factors) places.insert(static_cast<u64>(q));
        }
    }
    return {places.begin(), places.end()};
}

bool witt_condition(i64 a, i64 b) {
    for (i64 v : {a, b}) {
        if (v == 0 || squarefree_part(BigInt(v)) != v) fail(ErrorKind::InvalidArgument, "a and b must be squarefree");
    }
    BigInt ab = BigInt(a) * b;
    if (a == 1 || b == 1 || is_square_big(ab)) fail(ErrorKind::InvalidArgument, "a, b, ab must be nonsquares");
    Rational na(-a), nb(-b), m1(-1);
    for (u64 v : relevant_places(Rational(a), Rational(b))) {
        if (hilbert_symbol(na, nb, v) != hilbert_symbol(m1, m1, v)) return false;
    }
    return true;
}

BigInt PAdicApprox::modulus() const { return pow_big(BigInt(p), static_cast<unsigned>(precision)); }

bool PAdicApprox::is_square() const {
    if (valuation % 2) return false;
    if (p == 2) {
        if (precision < 3) fail(ErrorKind::InsufficientPrecision, "2-adic square test needs precision 3");
        return mod_big(unit, 8) == 1;
    }
    return legendre_big(unit, p) == 1;
}

PAdicApprox to_padic(const Rational& t, u64 p, int K) {
    if (t == 0) fail(ErrorKind::InvalidArgument, "p-adic value of zero");
    if (K < 1 || K > 64) fail(ErrorKind::InvalidArgument, "precision must lie in [1, 64]");
    int vn, vd;
    BigInt un, ud;
    split_valuation(numerator(t), p, vn, un);
    split_valuation(denominator(t), p, vd, ud);
    PAdicApprox r;
    r.p = p;
    r.valuation = vn - vd;
    r.precision = K;
    BigInt m = r.modulus();
    BigInt inv;
    // inverse of ud modulo p^K via extended Euclid
    {
        BigInt old_r = ((ud % m) + m) % m, rr = m, old_s = 1, s = 0;
        while (rr != 0) {
            BigInt q = old_r / rr;
            BigInt tmp = old_r - q * rr;
            old_r = rr;
            rr = tmp;
            tmp = old_s - q * s;
            old_s = s;
            s = tmp;
        }
        inv = ((old_s % m) + m) % m;
    }
    r.unit = ((un % m + m) % m) * inv % m;
    return r;
}

std::optional<PAdicApprox> sqrt_in_Qp(const Rational& t, u64 p, int K) {
    PAdicApprox x = to_padic(t, p, K);
    if (x.valuation % 2) return std::nullopt;
    BigInt m = x.modulus();
    BigInt r;
    if (p == 2) {
        if (K < 3) {
            if (mod_big(x.unit, 1ULL << K) != 1 % (1ULL << K)) return std::nullopt;
        } else if (mod_big(x.unit, 8) != 1) {
            return std::nullopt;
        }
        r = 1;
        for (int k = 3; k < K; ++k) {
            BigInt mk = BigInt(1) << (k + 1);
            if ((r * r - x.unit) % mk != 0) r += BigInt(1) << (k - 1);
        }
        r %= m;
    } else {
        auto r0 = sqrt_mod_prime(mod_big(x.unit, p), p);
        if (!r0) return std::nullopt;
        r = *r0;
        BigInt pk = p;
        for (int k = 1; k < K; ++k) {
            BigInt next = pk * p;
            // r <- r - (r^2 - u) / (2r) modulo p^{k+1}
            BigInt f = (r * r - x.unit) % next;
            BigInt two_r = (2 * r) % next;
            PAdicApprox inv = to_padic(Rational(1) / Rational(two_r), p, k + 1);
            r = ((r - f * inv.unit) % next + next) % next;
            pk = next;
        }
    }
    PAdicApprox out;
    out.p = p;
    out.valuation = x.valuation / 2;
    out.unit = r;
    out.precision = K;
    return out;
}

BiquadraticElement::BiquadraticElement(i64 a_, i64 b_, std::array<Rational, 4> coords) : a(a_), b(b_), c(coords) {
    if (a == 0 || b == 0) fail(ErrorKind::InvalidArgument, "biquadratic parameters must be nonzero");
}

BiquadraticElement BiquadraticElement::operator+(const BiquadraticElement& o) const {
    BiquadraticElement r = *this;
    for (int i = 0; i < 4; ++i) r.c[i] += o.c[i];
    return r;
}

BiquadraticElement BiquadraticElement::operator-(const BiquadraticElement& o) const {
    BiquadraticElement r = *this;
    for (int i = 0; i < 4; ++i) r.c[i] -= o.c[i];
    return r;
}

BiquadraticElement BiquadraticElement::operator*(const BiquadraticElement& o) const {
    if (a != o.a || b != o.b) fail(ErrorKind::InvalidArgument, "mixed biquadratic fields");
    const auto& x = c;
    const auto& y = o.c;
    Rational A(a), B(b), AB = A * B;
    BiquadraticElement r(a, b, {});
    r.c[0] = x[0] * y[0] + A * x[1] * y[1] + B * x[2] * y[2] + AB * x[3] * y[3];
    r.c[1] = x[0] * y[1] + x[1] * y[0] + B * (x[2] * y[3] + x[3] * y[2]);
    r.c[2] = x[0] * y[2] + x[2] * y[0] + A * (x[1] * y[3] + x[3] * y[1]);
    r.c[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] + x[2] * y[1];
    return r;
}

BiquadraticElement BiquadraticElement::scaled(const Rational& s) const {
    BiquadraticElement r = *this;
    for (auto& v : r.c) v *= s;
    return r;
}

BiquadraticElement BiquadraticElement::conj_a() const {
    BiquadraticElement r = *this;
    r.c[1] = -r.c[1];
    r.c[3] = -r.c[3];
    return r;
}

BiquadraticElement BiquadraticElement::conj_b() const {
    BiquadraticElement r = *this;
    r.c[2] = -r.c[2];
    r.c[3] = -r.c[3];
    return r;
}

bool BiquadraticElement::is_zero() const {
    for (auto& v : c) {
        if (v != 0) return false;
    }
    return true;
}

std::string BiquadraticElement::to_string() const {
    std::ostringstream os;
    os << rational_to_string(c[0]) << " + " << rational_to_string(c[1]) << "*sqrt(" << a << ") + "
       << rational_to_string(c[2]) << "*sqrt(" << b << ") + " << rational_to_string(c[3]) << "*sqrt(" << a << ")*sqrt("
       << b << ")";
    return os.str();
}

std::vector<PAdicApprox> embed_biquadratic(const BiquadraticElement& x, u64 p, int K) {
    if (p == 2) fail(ErrorKind::InvalidArgument, "embedding needs an odd prime");
    if (x.a % static_cast<i64>(p) == 0 || x.b % static_cast<i64>(p) == 0)
        fail(ErrorKind::NotSplit, "prime divides ab");
    int work = std::min(64, K + 16);
    auto ra = sqrt_in_Qp(Rational(x.a), p, work);
    auto rb = sqrt_in_Qp(Rational(x.b), p, work);
    if (!ra || !rb) fail(ErrorKind::NotSplit, "prime does not split completely in M");
    BigInt m = ra->modulus();
    // Clear denominators, keep their p-part separately.
    BigInt den = 1;
    for (auto& v : x.c) den = den / boost::multiprecision::gcd(den, denominator(v)) * denominator(v);
    std::array<BigInt, 4> num;
    for (int i = 0; i < 4; ++i) num[i] = numerator(x.c[i]) * (den / denominator(x.c[i]));
    std::vector<PAdicApprox> out;
    for (int sa : {1, -1}) {
        for (int sb : {1, -1}) {
            BigInt va = sa > 0 ? ra->unit : BigInt(m - ra->unit);
            BigInt vb = sb > 0 ? rb->unit : BigInt(m - rb->unit);
            BigInt v = (num[0] + num[1] * va + num[2] * vb + num[3] * (va * vb % m)) % m;
            v = (v + m) % m;
            if (v == 0) fail(ErrorKind::InsufficientPrecision, "embedded value vanishes to working precision");
            int val;
            BigInt unit;
            split_valuation(v, p, val, unit);
            if (work - val < K) fail(ErrorKind::InsufficientPrecision, "cancellation exceeds precision margin");
            PAdicApprox e = to_padic(Rational(unit, den), p, K);
            e.valuation += val;
            out.push_back(e);
        }
    }
    return out;
}

bool is_sum_of_three_squares(const BigInt& n) {
    if (n < 0) return false;
    if (n == 0) return true;
    BigInt m = n;
    while (m % 4 == 0) m /= 4;
    return mod_big(m, 8) != 7;
}

bool is_sum_of_three_rational_squares(const BigInt& n) {
    if (n <= 0) return n == 0;
    return is_sum_of_three_squares(squarefree_part(n));
}

}  // namespace arithstat
