#include "arithstat/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace arithstat {

namespace {

i64 iabs(i64 x) { return x < 0 ? -x : x; }

bool squarefree_i64(i64 n) {
    if (n == 0) return false;
    for (auto& [p, e] : factor_u64(static_cast<u64>(iabs(n)))) {
        if (e > 1) return false;
    }
    return true;
}

i64 gcd_i64(i64 x, i64 y) {
    x = iabs(x);
    y = iabs(y);
    while (y) {
        i64 t = x % y;
        x = y;
        y = t;
    }
    return x;
}

// Residue behaviour of Q(sqrt d) at p: 1 split, -1 inert, 0 ramified.
int quadratic_behaviour(i64 d, u64 p) {
    if (p == 2) {
        i64 r = ((d % 8) + 8) % 8;
        if (r == 1) return 1;
        if (r == 5) return -1;
        return 0;
    }
    return legendre_signed(d, p);
}

SplittingSymbol uniform_symbol(int e, int f) {
    int g = 8 / (e * f);
    return SplittingSymbol(std::vector<std::pair<int, int>>(static_cast<size_t>(g), {e, f}));
}

// Elements x + y w of Z_2[w], w^2 + w + 1 = 0, modulo 2^64.
struct Z2w {
    u64 x = 0, y = 0;
};
Z2w operator+(Z2w s, Z2w t) { return {s.x + t.x, s.y + t.y}; }
Z2w operator*(Z2w s, Z2w t) {
    u64 yy = s.y * t.y;
    return {s.x * t.x - yy, s.x * t.y + s.y * t.x - yy};
}
Z2w scalar(u64 c) { return {c, 0}; }

u64 to_u64_mod(const BigInt& v) {
    static const BigInt m = BigInt(1) << 64;
    BigInt r = v % m;
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

// sqrt of d = 1 mod 8 in Z_2, correct modulo 2^63.
u64 sqrt_z2(u64 d) {
    u64 s = 1;
    for (int k = 3; k < 64; ++k) {
        if (((s * s - d) >> k) & 1) s += u64{1} << (k - 1);
    }
    return s;
}

// sqrt d for d = 1 mod 4 inside Z_2[w]; d = 5 mod 8 uses sqrt(-3) = 1 + 2w.
Z2w sqrt_unramified(i64 d) {
    u64 du = static_cast<u64>(d);
    if ((du & 7) == 1) return scalar(sqrt_z2(du));
    u64 inv3 = 0xAAAAAAAAAAAAAAABULL;  // 3^{-1} mod 2^64
    u64 quotient = du * (0 - inv3);    // d / (-3) = 1 mod 8
    return scalar(sqrt_z2(quotient)) * Z2w{1, 2};
}

// Embedding of d^2 theta (integral coordinates) into Z_2[w] for all four sign choices.
struct TwoAdicTheta {
    bool usable = false;  // a, b = 1 mod 4
    bool split = false;   // 2 splits completely in M
    std::array<Z2w, 4> value{};
};

TwoAdicTheta embed_theta_2adic(const QuaternionParams& P) {
    TwoAdicTheta T;
    if (!P.two_unramified()) return T;
    T.usable = true;
    T.split = quadratic_behaviour(P.a, 2) == 1 && quadratic_behaviour(P.b, 2) == 1;
    BigInt d = 1;
    for (auto& c : P.theta.c) d = d / boost::multiprecision::gcd(d, denominator(c)) * denominator(c);
    std::array<u64, 4> X;
    for (int i = 0; i < 4; ++i) X[i] = to_u64_mod(numerator(P.theta.c[i]) * (d * d / denominator(P.theta.c[i])));
    Z2w sa = sqrt_unramified(P.a), sb = sqrt_unramified(P.b);
    int idx = 0;
    for (int ea : {1, -1}) {
        for (int eb : {1, -1}) {
            Z2w ra = ea > 0 ? sa : sa * scalar(~u64{0});
            Z2w rb = eb > 0 ? sb : sb * scalar(~u64{0});
            T.value[idx++] = scalar(X[0]) + scalar(X[1]) * ra + scalar(X[2]) * rb + scalar(X[3]) * (ra * rb);
        }
    }
    return T;
}

bool unit_square_mod4(Z2w u) {
    u64 x = u.x & 3, y = u.y & 3;
    for (u64 s = 0; s < 4; ++s) {
        for (u64 t = 0; t < 4; ++t) {
            if (s % 2 == 0 && t % 2 == 0) continue;
            Z2w z = Z2w{s, t} * Z2w{s, t};
            if ((z.x & 3) == x && (z.y & 3) == y) return true;
        }
    }
    return false;
}

struct TwoAdicClass {
    int valuation = 0;
    Z2w unit;
};

// Valuation and unit of q * value, read at precisions 8, 16, 32, 62.  `margin`
// is the number of unit digits needed beyond the valuation.
TwoAdicClass read_2adic(Z2w value, i64 q, int margin) {
    Z2w x = scalar(static_cast<u64>(q)) * value;
    for (int N : {8, 16, 32, 62}) {
        u64 mask = (u64{1} << N) - 1;
        u64 xs = x.x & mask, ys = x.y & mask;
        if (xs == 0 && ys == 0) continue;
        int v = std::min(xs ? __builtin_ctzll(xs) : 64, ys ? __builtin_ctzll(ys) : 64);
        if (N - v < margin) continue;
        return {v, Z2w{xs >> v, ys >> v}};
    }
    fail(ErrorKind::Undecided2Adic, "2-adic valuation of q*theta undecided at precision 2^62, q = " + std::to_string(q));
}

int alpha_from(const TwoAdicTheta& T, i64 q) {
    TwoAdicClass c = read_2adic(T.value[0], q, 3);
    if (c.valuation % 2) return 4;
    return unit_square_mod4(c.unit) ? 0 : 4;
}

// Square class of q*theta in Q_2 when 2 splits in M; all four embeddings must agree.
bool square_at_2(const TwoAdicTheta& T, i64 q) {
    int verdict = 0;
    for (auto& v : T.value) {
        TwoAdicClass c = read_2adic(v, q, 3);
        if (c.unit.y & 7) fail(ErrorKind::EmbeddingDisagreement, "split embedding at 2 left Z_2");
        int s = (c.valuation % 2 == 0 && (c.unit.x & 7) == 1) ? 1 : -1;
        if (verdict && s != verdict) fail(ErrorKind::EmbeddingDisagreement, "embeddings of q*theta at 2 disagree");
        verdict = s;
    }
    return verdict > 0;
}

// Square class of theta at an odd prime that splits completely in M:
// +1 square, -1 nonsquare unit class, 0 odd valuation.
int theta_class_at(const BiquadraticElement& theta, u64 p) {
    auto images = embed_biquadratic(theta, p, 16);
    int verdict = 2;
    for (auto& e : images) {
        int s = e.valuation % 2 ? 0 : (e.is_square() ? 1 : -1);
        if (verdict != 2 && s != verdict)
            fail(ErrorKind::EmbeddingDisagreement, "embeddings of theta disagree at p = " + std::to_string(p));
        verdict = s;
    }
    return verdict;
}

Rational norm_to_Q(const BiquadraticElement& x) {
    auto [u, v] = norm_to_Qsqrta(x);
    return u * u - Rational(x.a) * v * v;
}

}  // namespace

bool is_orthogonal_decomposition(i64 a, i64 b, const ThreeSquares& d) {
    auto& u = d.u;
    auto& v = d.v;
    return u[0] * u[0] + u[1] * u[1] + u[2] * u[2] == a && v[0] * v[0] + v[1] * v[1] + v[2] * v[2] == b &&
           u[0] * v[0] + u[1] * v[1] + u[2] * v[2] == 0;
}

namespace {

// Calls `take` on each decomposition in search order until it returns true.
bool for_each_decomposition(i64 a, i64 b, int D, const std::function<bool(const ThreeSquares&)>& take) {
    if (a <= 0 || b <= 0 || !witt_condition(a, b))
        fail(ErrorKind::InvalidArgument, "Witt condition fails for (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    if (D < 1) fail(ErrorKind::InvalidArgument, "denominator bound must be positive");
    // 0, 1, -1, 2, -2, ...
    auto walk = [](i64 R) {
        std::vector<i64> out{0};
        for (i64 k = 1; k <= R; ++k) {
            out.push_back(k);
            out.push_back(-k);
        }
        return out;
    };
    for (i64 s = 1; s <= D; ++s) {
        i64 A = a * s * s;
        i64 RA = static_cast<i64>(isqrt_u64(static_cast<u64>(A)));
        for (i64 x : walk(RA)) {
            for (i64 y : walk(RA)) {
                i64 rest = A - x * x - y * y;
                if (rest < 0 || !is_square_u64(static_cast<u64>(rest))) continue;
                i64 z = static_cast<i64>(isqrt_u64(static_cast<u64>(rest)));
                for (i64 t = 1; t <= D; ++t) {
                    i64 B = b * t * t;
                    i64 RB = static_cast<i64>(isqrt_u64(static_cast<u64>(B)));
                    for (i64 l : walk(RB)) {
                        for (i64 m : walk(RB)) {
                            i64 r2 = B - l * l - m * m;
                            if (r2 < 0 || !is_square_u64(static_cast<u64>(r2))) continue;
                            i64 n0 = static_cast<i64>(isqrt_u64(static_cast<u64>(r2)));
                            for (i64 n : {n0, -n0}) {
                                if (x * l + y * m + z * n != 0) continue;
                                ThreeSquares d{{Rational(x, s), Rational(y, s), Rational(z, s)},
                                               {Rational(l, t), Rational(m, t), Rational(n, t)}};
                                if (take(d)) return true;
                                if (n0 == 0) break;
                            }
                        }
                    }
                }
            }
        }
    }
    return false;
}

}  // namespace

std::optional<ThreeSquares> orthogonal_three_squares(i64 a, i64 b, int D) {
    std::optional<ThreeSquares> found;
    for_each_decomposition(a, b, D, [&](const ThreeSquares& d) {
        found = d;
        return true;
    });
    return found;
}

BiquadraticElement theta_element(i64 a, i64 b, const ThreeSquares& d) {
    const Rational &al = d.u[0], &be = d.u[1], &la = d.v[0], &mu = d.v[1];
    return BiquadraticElement(a, b, {Rational(1), al / a, mu / b, (al * mu - be * la) / (Rational(a) * b)});
}

QuaternionParams::QuaternionParams(i64 a_, i64 b_, const ThreeSquares& d) : a(a_), b(b_), decomposition(d) {
    if (!squarefree_i64(a) || !squarefree_i64(b) || a == 1 || b == 1)
        fail(ErrorKind::InvalidArgument, "a and b must be squarefree and different from 1");
    if (gcd_i64(a, b) != 1) fail(ErrorKind::InvalidArgument, "a and b must be coprime");
    if (!witt_condition(a, b)) fail(ErrorKind::InvalidArgument, "Witt condition fails");
    if (!is_orthogonal_decomposition(a, b, d)) fail(ErrorKind::InvalidArgument, "not an orthogonal three-square decomposition");
    theta = theta_element(a, b, d);
    // The conductor formula needs theta to be a unit square class away from 2ab.
    // Odd valuations can only be located here at completely split primes.
    Rational N = norm_to_Q(theta);
    BigInt support = abs(numerator(N) * denominator(N));
    Factorization f = factor_big(support);
    if (!f.complete) fail(ErrorKind::InvalidArgument, "cannot factor the norm of theta");
    for (auto& [pb, e] : f.factors) {
        u64 p = static_cast<u64>(pb);
        if (p == 2 || a % static_cast<i64>(p) == 0 || b % static_cast<i64>(p) == 0) continue;
        LocalType t = splitting_in_M(a, b, p);
        if (t.g != 4)
            fail(ErrorKind::InvalidArgument, "theta is supported at the non-split prime " + std::to_string(p));
        if (theta_class_at(theta, p) == 0)
            fail(ErrorKind::InvalidArgument, "theta has odd valuation above " + std::to_string(p));
    }
}

QuaternionParams QuaternionParams::search(i64 a, i64 b, int D) {
    // The first decomposition whose theta passes validation.
    std::optional<QuaternionParams> found;
    for_each_decomposition(a, b, D, [&](const ThreeSquares& d) {
        try {
            found.emplace(a, b, d);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InvalidArgument) throw;
        }
        return found.has_value();
    });
    if (!found) fail(ErrorKind::InvalidArgument, "no usable decomposition with denominators <= " + std::to_string(D));
    return *found;
}

BigInt QuaternionParams::r_ab() const { return abs(squarefree_part(BigInt(a) * b)); }

bool QuaternionParams::two_unramified() const { return ((a % 4) + 4) % 4 == 1 && ((b % 4) + 4) % 4 == 1; }

std::pair<Rational, Rational> norm_to_Qsqrta(const BiquadraticElement& x) {
    BiquadraticElement n = x * x.conj_b();
    if (n.c[2] != 0 || n.c[3] != 0) fail(ErrorKind::InvalidArgument, "norm left Q(sqrt a)");
    return {n.c[0], n.c[1]};
}

std::vector<Rational> theta_charpoly(const BiquadraticElement& theta) {
    std::array<Rational, 5> pw{};
    BiquadraticElement acc = theta;
    for (int k = 1; k <= 4; ++k) {
        pw[k] = 4 * acc.c[0];
        acc = acc * theta;
    }
    Rational e1 = pw[1];
    Rational e2 = (e1 * pw[1] - pw[2]) / 2;
    Rational e3 = (e2 * pw[1] - e1 * pw[2] + pw[3]) / 3;
    Rational e4 = (e3 * pw[1] - e2 * pw[2] + e1 * pw[3] - pw[4]) / 4;
    return {e4, -e3, e2, -e1, Rational(1)};
}

std::vector<Rational> sqrt_theta_minpoly(const BiquadraticElement& theta) {
    auto g = theta_charpoly(theta);
    std::vector<Rational> h(9, 0);
    for (int i = 0; i <= 4; ++i) h[2 * i] = g[i];
    return h;
}

DegreeCertificate sqrt_theta_degree(const QuaternionParams& P, int witnesses) {
    DegreeCertificate c;
    const auto& t = P.theta;
    BiquadraticElement ca = t.conj_a(), cb = t.conj_b(), cab = ca.conj_b();
    c.conjugates_distinct = !(t - ca).is_zero() && !(t - cb).is_zero() && !(t - cab).is_zero() &&
                            !(ca - cb).is_zero() && !(ca - cab).is_zero() && !(cb - cab).is_zero();
    if (!c.conjugates_distinct) return c;
    for (u64 p : primes_up_to(100000)) {
        if (static_cast<int>(c.nonsquare_primes.size()) >= witnesses) break;
        if (p == 2 || P.a % static_cast<i64>(p) == 0 || P.b % static_cast<i64>(p) == 0) continue;
        if (splitting_in_M(P.a, P.b, p).g != 4) continue;
        bool denominator_hit = false;
        for (auto& x : t.c) denominator_hit |= denominator(x) % p == 0;
        if (denominator_hit) continue;
        if (theta_class_at(t, p) != 1) c.nonsquare_primes.push_back(p);
    }
    c.degree = c.nonsquare_primes.empty() ? 4 : 8;
    return c;
}

LocalType splitting_in_M(i64 a, i64 b, u64 p) {
    int ba = quadratic_behaviour(a, p), bb = quadratic_behaviour(b, p);
    int bab = quadratic_behaviour(a * b, p);
    LocalType t;
    int ramified = (ba == 0) + (bb == 0) + (bab == 0);
    int inert = (ba == -1) + (bb == -1) + (bab == -1);
    t.e = ramified == 3 ? 4 : (ramified ? 2 : 1);
    t.f = inert ? 2 : 1;
    t.g = 4 / (t.e * t.f);
    return t;
}

int alpha_2adic(const QuaternionParams& P, i64 q) {
    if (!P.two_unramified()) fail(ErrorKind::InvalidArgument, "2-adic test needs a, b = 1 mod 4");
    return alpha_from(embed_theta_2adic(P), q);
}

bool is_twist_parameter(const QuaternionParams& P, i64 q) {
    if (q == 1) return true;
    if (!is_fundamental_discriminant(q)) return false;
    return gcd_i64(q, P.a * P.b) == 1;
}

SplittingSymbol splitting_in_Kq(const QuaternionParams& P, i64 q, u64 p) {
    if (!is_prime_u64(p)) fail(ErrorKind::InvalidArgument, "p must be prime");
    if (!is_twist_parameter(P, q)) fail(ErrorKind::InvalidArgument, "q is not a twist parameter");
    LocalType m = splitting_in_M(P.a, P.b, p);
    if (m.e > 1) return uniform_symbol(2 * m.e, m.f);
    if (p == 2) {
        TwoAdicTheta T = embed_theta_2adic(P);
        if (alpha_from(T, q) == 4) return uniform_symbol(2, m.f);
        if (m.f == 2) return uniform_symbol(1, 4);
        return square_at_2(T, q) ? uniform_symbol(1, 1) : uniform_symbol(1, 2);
    }
    if (q % static_cast<i64>(p) == 0) return uniform_symbol(2, m.f);
    if (m.f == 2) return uniform_symbol(1, 4);
    int cls = theta_class_at(P.theta, p);
    if (cls == 0) return uniform_symbol(2, 1);
    int s = cls * legendre_signed(q, p);
    return s > 0 ? uniform_symbol(1, 1) : uniform_symbol(1, 2);
}

ConductorInfo conductor_Kq(const QuaternionParams& P, i64 q) {
    if (!is_twist_parameter(P, q)) fail(ErrorKind::InvalidArgument, "q is not a twist parameter");
    ConductorInfo c;
    i64 odd = iabs(q);
    while (odd % 2 == 0) odd /= 2;
    BigInt r = P.r_ab();
    c.alpha = P.two_unramified() ? alpha_2adic(P, q) : -1;
    c.conductor = r * r * BigInt(odd) * odd;
    if (c.alpha > 0) c.conductor <<= c.alpha;
    return c;
}

int theta_Q8(const SplittingSymbol& s, int k) {
    if (s.degree() != 8) fail(ErrorKind::InvalidArgument, "Q8 character needs a degree 8 symbol");
    if (!s.unramified()) return 0;
    int f = s.factors.front().second;
    for (auto& [e, ff] : s.factors) {
        if (ff != f) fail(ErrorKind::InvalidArgument, "not a Galois splitting symbol: " + s.encode());
    }
    switch (f) {
        case 1: return 2;
        case 2: return k % 2 ? -2 : 2;
        case 4: return k % 2 ? 0 : (k % 4 == 2 ? -2 : 2);
        default: fail(ErrorKind::InvalidArgument, "residue degree impossible in Q8: " + s.encode());
    }
}

TwistSplitter::TwistSplitter(const QuaternionParams& params, std::vector<u64> primes)
    : params_(params), primes_(std::move(primes)) {
    for (u64 p : primes_) {
        PrimeData d{};
        d.p = p;
        d.m = splitting_in_M(params_.a, params_.b, p);
        d.divides_ab = d.m.e > 1;
        d.theta_class = 0;
        d.unram_split_sq = symbol_code(uniform_symbol(1, 1));
        d.unram_split_nonsq = symbol_code(uniform_symbol(1, 2));
        d.unram_inert = symbol_code(uniform_symbol(1, 4));
        d.ram_q = symbol_code(uniform_symbol(2, d.m.f));
        d.fixed = d.divides_ab ? symbol_code(uniform_symbol(2 * d.m.e, d.m.f)) : 0;
        if (p != 2 && !d.divides_ab) {
            d.qr.resize(p);
            for (u64 r = 0; r < p; ++r) d.qr[r] = static_cast<std::int8_t>(legendre(r, p));
            if (d.m.g == 4) d.theta_class = theta_class_at(params_.theta, p);
        }
        data_.push_back(std::move(d));
    }
}

SymbolCode TwistSplitter::code(i64 q, std::size_t i) const {
    const PrimeData& d = data_[i];
    if (d.divides_ab) return d.fixed;
    if (d.p == 2) return symbol_code(splitting_in_Kq(params_, q, 2));
    u64 r = mod_signed(q, d.p);
    if (r == 0) return d.ram_q;
    if (d.m.f == 2) return d.unram_inert;
    if (d.theta_class == 0) return symbol_code(uniform_symbol(2, 1));
    return d.theta_class * d.qr[r] > 0 ? d.unram_split_sq : d.unram_split_nonsq;
}

std::vector<i64> twist_parameters(const QuaternionParams& P, i64 qmax) {
    if (qmax < 1) fail(ErrorKind::InvalidArgument, "qmax must be positive");
    std::vector<i64> out{1};
    for (i64 n = 3; n <= qmax; ++n) {
        for (i64 q : {-n, n}) {
            if (is_twist_parameter(P, q)) out.push_back(q);
        }
    }
    return out;
}

TwistRun run_twists(const QuaternionParams& P, i64 qmax, u64 pmax, bool parallel,
                    const std::function<void(const TwistRecord&)>* visit) {
    TwistRun run;
    run.stats = FamilyStats(8, pmax);
    TwistSplitter splitter(P, run.stats.primes);
    TwoAdicTheta T = embed_theta_2adic(P);
    std::vector<i64> qs = twist_parameters(P, qmax);
    const std::size_t np = run.stats.primes.size();
    BigInt r = P.r_ab();
    long double log_r2 = 2 * std::log(r.convert_to<long double>());
    const std::size_t block = 4096;
    std::vector<SymbolCode> codes;
    std::vector<int> alphas;
    for (std::size_t start = 0; start < qs.size(); start += block) {
        std::size_t n = std::min(block, qs.size() - start);
        codes.assign(n * np, 0);
        alphas.assign(n, 0);
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
        for (std::size_t j = 0; j < n; ++j) {
            i64 q = qs[start + j];
            alphas[j] = T.usable ? alpha_from(T, q) : -1;
            for (std::size_t i = 0; i < np; ++i) codes[j * np + i] = splitter.code(q, i);
        }
        for (std::size_t j = 0; j < n; ++j) {
            i64 q = qs[start + j];
            i64 odd = iabs(q);
            while (odd % 2 == 0) odd /= 2;
            int alpha = alphas[j];
            if (alpha == 0) ++run.alpha0;
            else if (alpha == 4) ++run.alpha4;
            else ++run.alpha_undecided;
            long double logc = log_r2 + 2 * std::log(static_cast<long double>(odd)) +
                               (alpha > 0 ? alpha * std::log(2.0L) : 0.0L);
            run.stats.add(logc, &codes[j * np]);
            if (visit) {
                TwistRecord rec;
                rec.q = q;
                rec.alpha = alpha;
                rec.conductor = r * r * BigInt(odd) * odd;
                if (alpha > 0) rec.conductor <<= alpha;
                rec.codes.assign(codes.begin() + static_cast<long>(j * np), codes.begin() + static_cast<long>((j + 1) * np));
                (*visit)(rec);
            }
        }
    }
    return run;
}

std::map<std::string, Rational> twist_predicted(const QuaternionParams& P, u64 p) {
    if (p == 2 || P.a % static_cast<i64>(p) == 0 || P.b % static_cast<i64>(p) == 0)
        fail(ErrorKind::InvalidArgument, "prediction needs an odd prime not dividing ab");
    LocalType m = splitting_in_M(P.a, P.b, p);
    Rational unram(p, p + 1);
    std::map<std::string, Rational> out;
    if (m.f == 1) {
        out[uniform_symbol(1, 1).cycle_type().to_string()] = unram / 2;
        out[uniform_symbol(1, 2).cycle_type().to_string()] = unram / 2;
    } else {
        out[uniform_symbol(1, 4).cycle_type().to_string()] = unram;
    }
    return out;
}

}  // namespace arithstat
