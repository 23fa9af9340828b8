#include "arithstat/cubicforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <omp.h>

#include "arithstat/polyfactor.hpp"

namespace arithstat {

namespace {

i128 eval_form(const BinaryCubicForm& f, i128 x, i128 y) {
    return f.a * x * x * x + f.b * x * x * y + f.c * x * y * y + f.d * y * y * y;
}

// Small GL2(Z) matrices: entries in {-1, 0, 1}, determinant +-1.
const std::vector<Mat2>& small_matrices() {
    static const std::vector<Mat2> mats = [] {
        std::vector<Mat2> m;
        for (i64 p = -1; p <= 1; ++p)
            for (i64 q = -1; q <= 1; ++q)
                for (i64 r = -1; r <= 1; ++r)
                    for (i64 s = -1; s <= 1; ++s) {
                        i64 det = p * s - q * r;
                        if (det == 1 || det == -1) m.push_back({p, q, r, s});
                    }
        return m;
    }();
    return mats;
}

}  // namespace

i64 BinaryCubicForm::eval(i64 x, i64 y) const { return static_cast<i64>(eval_form(*this, x, y)); }
i128 BinaryCubicForm::eval128(i64 x, i64 y) const { return eval_form(*this, x, y); }

std::string BinaryCubicForm::to_string() const {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << "," << d << ")";
    return os.str();
}

i128 disc_cubic(const BinaryCubicForm& f) {
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    return b * b * c * c + 18 * a * b * c * d - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d;
}

BinaryCubicForm twisted_action(const BinaryCubicForm& f, const Mat2& g) {
    // X = p x + r y, Y = q x + s y; expand F(X, Y) as a cubic in (x, y).
    i64 det = g[0] * g[3] - g[1] * g[2];
    if (det != 1 && det != -1) fail(ErrorKind::InvalidArgument, "matrix not in GL2(Z)");
    i128 p = g[0], q = g[1], r = g[2], s = g[3];
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    i128 x3 = eval_form(f, g[0], g[1]);
    i128 y3 = eval_form(f, g[2], g[3]);
    i128 x2y = 3 * a * p * p * r + b * (p * p * s + 2 * p * q * r) + c * (q * q * r + 2 * p * q * s) + 3 * d * q * q * s;
    i128 xy2 = 3 * a * p * r * r + b * (2 * p * r * s + q * r * r) + c * (p * s * s + 2 * q * r * s) + 3 * d * q * s * s;
    return {static_cast<i64>(x3 * det), static_cast<i64>(x2y * det), static_cast<i64>(xy2 * det), static_cast<i64>(y3 * det)};
}

bool is_DH_maximal(const BinaryCubicForm& f, u64 p) {
    if (disc_cubic(f) == 0) fail(ErrorKind::ZeroDiscriminant, "form has zero discriminant");
    i64 ip = static_cast<i64>(p);
    auto m = [ip](i64 v) { return ((v % ip) + ip) % ip; };
    if (m(f.a) == 0 && m(f.b) == 0 && m(f.c) == 0 && m(f.d) == 0) return false;
    // multiple root at infinity
    if (m(f.a) == 0 && m(f.b) == 0 && m(f.a) == 0 && (f.a % (ip * ip)) == 0) return false;
    // finite multiple roots: common roots of F(x,1) and its derivative
    FpPoly g{static_cast<u64>(m(f.d)), static_cast<u64>(m(f.c)), static_cast<u64>(m(f.b)), static_cast<u64>(m(f.a))};
    fp::trim(g);
    FpPoly common = fp::gcd(g, fp::derivative(g, p), p);
    if (fp::deg(common) <= 0) return true;
    std::vector<u64> roots;
    if (p <= 7) {
        for (u64 r = 0; r < p; ++r) {
            if (fp::eval(common, r, p) == 0) roots.push_back(r);
        }
    } else if (fp::deg(common) == 1) {
        roots.push_back(mulmod(p - common[0], invmod(common[1], p), p));
    } else {
        // (x - r)^2 for a triple root
        roots.push_back(mulmod(p - common[1], invmod(mulmod(2, common[2], p), p), p));
    }
    i128 p2 = static_cast<i128>(ip) * ip;
    for (u64 r : roots) {
        if (eval_form(f, static_cast<i64>(r), 1) % p2 == 0) return false;
    }
    return true;
}

bool is_DH_maximal_bruteforce(const BinaryCubicForm& f, u64 p) {
    i64 ip = static_cast<i64>(p), m = ip * ip;
    auto md = [](i128 v, i64 mod) { return static_cast<i64>(((v % mod) + mod) % mod); };
    if (md(f.a, ip) == 0 && md(f.b, ip) == 0 && md(f.c, ip) == 0 && md(f.d, ip) == 0) return false;
    for (i64 u = 0; u < m; ++u) {
        for (i64 v = 0; v < m; ++v) {
            if (u % ip == 0 && v % ip == 0) continue;
            if (md(eval_form(f, u, v), m) != 0) continue;
            // complete (u, v) to a matrix [[u, v], [s, t]] of determinant 1 mod p^2
            i64 s = -1, t = -1;
            for (i64 ss = 0; ss < m && s < 0; ++ss)
                for (i64 tt = 0; tt < m; ++tt)
                    if (md(static_cast<i128>(u) * tt - static_cast<i128>(v) * ss, m) == 1) {
                        s = ss;
                        t = tt;
                        break;
                    }
            i128 fx = 3 * f.a * static_cast<i128>(u) * u + 2 * f.b * static_cast<i128>(u) * v + f.c * static_cast<i128>(v) * v;
            i128 fy = f.b * static_cast<i128>(u) * u + 2 * f.c * static_cast<i128>(u) * v + 3 * f.d * static_cast<i128>(v) * v;
            if (md(s * fx + t * fy, ip) == 0) return false;
        }
    }
    return true;
}

SplittingSymbol binary_form_shape(const std::vector<u64>& coeffs_high, u64 p) {
    int n = static_cast<int>(coeffs_high.size()) - 1;
    int k = 0;
    while (k <= n && coeffs_high[k] % p == 0) ++k;
    if (k > n) fail(ErrorKind::NotPMaximal, "form vanishes identically mod p");
    FpPoly g(n - k + 1);
    for (int m = 0; m <= n - k; ++m) g[m] = coeffs_high[n - m] % p;
    std::vector<std::pair<int, int>> ef;
    if (n - k > 0) ef = fp::factor_shape(g, p);
    if (k > 0) ef.emplace_back(k, 1);
    return SplittingSymbol(ef);
}

SplittingSymbol splitting_symbol_cubic(const BinaryCubicForm& f, u64 p) {
    if (disc_cubic(f) == 0) fail(ErrorKind::ZeroDiscriminant, "form has zero discriminant");
    if (!is_DH_maximal(f, p)) fail(ErrorKind::NotPMaximal, "form not maximal at " + std::to_string(p));
    i64 ip = static_cast<i64>(p);
    auto m = [ip](i64 v) { return static_cast<u64>(((v % ip) + ip) % ip); };
    return binary_form_shape({m(f.a), m(f.b), m(f.c), m(f.d)}, p);
}

CycleType projective_type_fp(u64 a, u64 b, u64 c, u64 d, u64 p) {
    int roots = a % p == 0 ? 1 : 0;
    for (u64 r = 0; r < p; ++r) {
        u64 v = (((a * r % p + b) % p * r % p + c) % p * r % p + d) % p;
        roots += v == 0;
    }
    if (roots == 3) return CycleType({1, 1, 1});
    if (roots == 1) return CycleType({2, 1});
    if (roots == 0) return CycleType({3});
    fail(ErrorKind::ZeroDiscriminant, "form has a repeated root mod p");
}

Hessian hessian(const BinaryCubicForm& f) {
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    return {b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d};
}

namespace {

std::vector<long double> real_roots(const BinaryCubicForm& f) {
    long double a = f.a, b = f.b, c = f.c, d = f.d;
    if (a < 0) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
    auto F = [&](long double x) { return ((a * x + b) * x + c) * x + d; };
    long double bound = 1 + std::max({std::fabs(b / a), std::fabs(c / a), std::fabs(d / a)});
    std::vector<long double> cuts{-bound};
    long double disc = b * b - 3 * a * c;
    if (disc > 0) {
        long double s = std::sqrt(disc);
        cuts.push_back((-b - s) / (3 * a));
        cuts.push_back((-b + s) / (3 * a));
    }
    cuts.push_back(bound);
    std::vector<long double> roots;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        long double lo = cuts[i], hi = cuts[i + 1];
        long double flo = F(lo), fhi = F(hi);
        if (flo == 0) {
            roots.push_back(lo);
            continue;
        }
        if ((flo < 0) == (fhi < 0)) continue;
        for (int it = 0; it < 200; ++it) {
            long double mid = (lo + hi) / 2;
            long double fm = F(mid);
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        roots.push_back((lo + hi) / 2);
    }
    if (F(cuts.back()) == 0) roots.push_back(cuts.back());
    return roots;
}

std::vector<i64> positive_divisors(i64 n) {
    n = n < 0 ? -n : n;
    std::vector<i64> out;
    for (i64 k = 1; k * k <= n; ++k) {
        if (n % k) continue;
        out.push_back(k);
        if (k * k != n) out.push_back(n / k);
    }
    return out;
}

}  // namespace

bool is_irreducible_cubic_form(const BinaryCubicForm& f) {
    if (f.a == 0 || f.d == 0) return false;
    // a root-free reduction mod a prime not dividing a certifies irreducibility
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        i64 ip = static_cast<i64>(p);
        if (f.a % ip == 0) continue;
        bool has_root = false;
        for (i64 r = 0; r < ip && !has_root; ++r) has_root = eval_form(f, r, 1) % ip == 0;
        if (!has_root) return true;
    }
    for (long double theta : real_roots(f)) {
        for (i64 s : positive_divisors(f.a)) {
            long double target = theta * s;
            if (std::fabs(target) > 9e18L) continue;
            i64 r0 = static_cast<i64>(std::llround(target));
            for (i64 r = r0 - 1; r <= r0 + 1; ++r) {
                if (eval_form(f, r, s) == 0) return false;
            }
        }
    }
    return true;
}

bool is_reduced(const BinaryCubicForm& f) {
    if (f.a <= 0) return false;
    i128 disc = disc_cubic(f);
    if (disc > 0) {
        Hessian h = hessian(f);
        i128 aq = h.Q < 0 ? -h.Q : h.Q;
        return aq <= h.P && h.P <= h.R;
    }
    if (disc < 0) {
        // One real root theta; F(x,1) has the sign of x - theta.  The complex
        // root lies in the closed fundamental domain iff |b/a + theta| <= 1
        // and |omega|^2 = -d/(a theta) >= 1.
        if (f.d == 0) return false;
        if (eval_form(f, -f.b - f.a, f.a) > 0) return false;
        if (eval_form(f, -f.b + f.a, f.a) < 0) return false;
        i128 v = eval_form(f, -f.d, f.a);
        return f.d < 0 ? v >= 0 : v <= 0;
    }
    return false;
}

bool is_canonical(const BinaryCubicForm& f) {
    if (!is_reduced(f)) return false;
    for (const Mat2& g : small_matrices()) {
        BinaryCubicForm h = twisted_action(f, g);
        if (h < f && is_reduced(h)) return false;
    }
    return true;
}

BinaryCubicForm canonical_form(const BinaryCubicForm& fin) {
    if (!is_irreducible_cubic_form(fin)) fail(ErrorKind::InvalidArgument, "canonical form needs an irreducible form");
    i128 disc = disc_cubic(fin);
    BinaryCubicForm f = fin;
    const Mat2 neg{-1, 0, 0, -1};
    if (disc > 0) {
        for (int guard = 0; guard < 10000; ++guard) {
            Hessian h = hessian(f);
            if (h.Q > h.P || h.Q < -h.P) {
                // x -> x + k y sends Q to Q + 2kP
                i128 k = h.P - h.Q >= 0 ? (h.P - h.Q) / (2 * h.P) : -((h.Q - h.P + 2 * h.P - 1) / (2 * h.P));
                f = twisted_action(f, {1, 0, static_cast<i64>(k), 1});
            } else if (h.P > h.R) {
                f = twisted_action(f, {0, 1, -1, 0});
            } else {
                break;
            }
        }
    } else {
        using cld = std::complex<long double>;
        for (int guard = 0; guard < 10000; ++guard) {
            // complex root of F(x, 1) from the real root and the quadratic cofactor
            auto roots = real_roots(f);
            if (roots.empty()) fail(ErrorKind::InvalidArgument, "no real root found for negative discriminant");
            long double theta = roots.front();
            long double pp = static_cast<long double>(f.b) / f.a + theta;
            long double qq = -static_cast<long double>(f.d) / (f.a * theta);
            cld omega(-pp / 2, std::sqrt(std::max(0.0L, qq - pp * pp / 4)));
            long double k = std::round(omega.real());
            if (k != 0) {
                f = twisted_action(f, {1, 0, static_cast<i64>(k), 1});
            } else if (std::norm(omega) < 1 - 1e-12L) {
                f = twisted_action(f, {0, 1, -1, 0});
            } else {
                break;
            }
        }
    }
    if (f.a < 0) f = twisted_action(f, neg);
    // Search a two-step neighbourhood for reduced forms, then take the least.
    std::vector<BinaryCubicForm> frontier{f}, seen{f};
    for (int depth = 0; depth < 2; ++depth) {
        std::vector<BinaryCubicForm> next;
        for (auto& h : frontier) {
            for (const Mat2& g : small_matrices()) {
                BinaryCubicForm t = twisted_action(h, g);
                if (std::find(seen.begin(), seen.end(), t) == seen.end()) {
                    seen.push_back(t);
                    next.push_back(t);
                }
            }
        }
        frontier = std::move(next);
    }
    std::optional<BinaryCubicForm> best;
    for (auto& h : seen) {
        if (is_reduced(h) && (!best || h < *best)) best = h;
    }
    if (!best) fail(ErrorKind::InvalidArgument, "reduction failed for " + fin.to_string());
    return *best;
}

namespace {

const SymbolCode kCode111 = symbol_code(SplittingSymbol({{1, 1}, {1, 1}, {1, 1}}));
const SymbolCode kCode21 = symbol_code(SplittingSymbol({{1, 2}, {1, 1}}));
const SymbolCode kCode3 = symbol_code(SplittingSymbol({{1, 3}}));

// x^p mod the monic cubic x^3 + c2 x^2 + c1 x + c0 over F_p equals x?
// Sums of three products of residues must fit in W.
template <class W>
bool frobenius_fixes_x(W c2, W c1, W c0, W p) {
    const W n2 = (p - c2) % p, n1 = (p - c1) % p, n0 = (p - c0) % p;
    auto mulred = [&](const std::array<W, 3>& u, const std::array<W, 3>& v) {
        W t0 = u[0] * v[0] % p;
        W t1 = (u[0] * v[1] + u[1] * v[0]) % p;
        W t2 = (u[0] * v[2] + u[1] * v[1] + u[2] * v[0]) % p;
        W t3 = (u[1] * v[2] + u[2] * v[1]) % p;
        W t4 = u[2] * v[2] % p;
        // x^4 = x * x^3 and x^3 = -(c2 x^2 + c1 x + c0)
        t3 = (t3 + t4 * n2) % p;
        t2 = (t2 + t4 * n1 + t3 * n2) % p;
        t1 = (t1 + t4 * n0 + t3 * n1) % p;
        t0 = (t0 + t3 * n0) % p;
        return std::array<W, 3>{t0, t1, t2};
    };
    std::array<W, 3> result{1, 0, 0}, base{0, 1, 0};
    for (W e = p; e; e >>= 1) {
        if (e & 1) result = mulred(result, base);
        base = mulred(base, base);
    }
    return result[0] == 0 && result[1] == 1 && result[2] == 0;
}

}  // namespace

// Unramified cubic splitting code at p not dividing disc (exported for the monic kernel).
SymbolCode cubic_code_unramified(i64 a, i64 b, i64 c, i64 d, i128 disc, u64 p) {
    u64 A = mod_signed(a, p), B = mod_signed(b, p), C = mod_signed(c, p), D = mod_signed(d, p);
    if (p == 2) {
        CycleType t = projective_type_fp(A, B, C, D, p);
        return t.parts.size() == 3 ? kCode111 : (t.parts.size() == 2 ? kCode21 : kCode3);
    }
    if (legendre(mod_signed128(disc, p), p) == -1) return kCode21;
    if (A == 0) return kCode111;
    if (p >= (1ULL << 31)) {
        FpPoly g{D, C, B, A};
        return symbol_code(SplittingSymbol(fp::factor_shape(g, p)));
    }
    u64 inv = invmod(A, p);
    u64 c2 = mulmod(B, inv, p), c1 = mulmod(C, inv, p), c0 = mulmod(D, inv, p);
    bool split = p < 30000 ? frobenius_fixes_x<std::uint32_t>(c2, c1, c0, p) : frobenius_fixes_x<u64>(c2, c1, c0, p);
    return split ? kCode111 : kCode3;
}

namespace {

struct CandidateSink {
    std::vector<CubicFieldRecord> records;
    u64 candidates = 0;
};

void finish_candidate(const BinaryCubicForm& f, i128 disc, const std::vector<u64>& primes, CandidateSink& sink) {
    ++sink.candidates;
    if (!is_canonical(f)) return;
    if (!is_irreducible_cubic_form(f)) return;
    u64 ad = static_cast<u64>(disc < 0 ? -disc : disc);
    auto fac = factor_u64(ad);
    bool ntr = true;
    for (auto& [p, e] : fac) {
        if (e >= 2 && !is_DH_maximal(f, p)) return;
    }
    CubicFieldRecord r;
    r.form = f;
    r.disc = static_cast<i64>(disc);
    for (auto& [p, e] : fac) {
        auto s = splitting_symbol_cubic(f, p);
        if (s.factors.size() == 1 && s.factors[0].first == 3) ntr = false;
    }
    r.ntr = ntr;
    r.resolvent_disc = ntr ? static_cast<i64>(fundamental_discriminant(BigInt(r.disc))) : 0;
    r.splitting.resize(primes.size());
    for (size_t i = 0; i < primes.size(); ++i) {
        u64 p = primes[i];
        if (ad % p) {
            r.splitting[i] = cubic_code_unramified(f.a, f.b, f.c, f.d, disc, p);
        } else {
            r.splitting[i] = symbol_code(splitting_symbol_cubic(f, p));
        }
    }
    sink.records.push_back(std::move(r));
}

i64 floor_div(i128 n, i128 d) {
    i128 q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
    return static_cast<i64>(q);
}
i64 ceil_div(i128 n, i128 d) { return -floor_div(-n, d); }

// Positive discriminant shard: forms with leading coefficient a and reduced Hessian.
void shard_positive(i64 a, i64 X, const std::vector<u64>& primes, CandidateSink& sink) {
    i64 pmax = static_cast<i64>(isqrt_u64(static_cast<u64>(X - 1)));
    i64 bmax = static_cast<i64>(1.5 * a + 3 * std::sqrt(2.0 * pmax)) + 1;
    for (i64 b = -bmax; b <= bmax; ++b) {
        i64 clo = ceil_div(static_cast<i128>(b) * b - pmax, 3 * a);
        i64 chi = floor_div(static_cast<i128>(b) * b - 1, 3 * a);
        for (i64 c = clo; c <= chi; ++c) {
            i64 P = b * b - 3 * a * c;
            i64 dlo = ceil_div(static_cast<i128>(b) * c - P, 9 * a);
            i64 dhi = floor_div(static_cast<i128>(b) * c + P, 9 * a);
            for (i64 d = dlo; d <= dhi; ++d) {
                i128 R = static_cast<i128>(c) * c - 3 * static_cast<i128>(b) * d;
                if (R < P) continue;
                BinaryCubicForm f{a, b, c, d};
                i128 disc = disc_cubic(f);
                if (disc <= 0 || disc >= X) continue;
                if (!is_reduced(f)) continue;
                finish_candidate(f, disc, primes, sink);
            }
        }
    }
}

// Negative discriminant shard: the real root theta determines d = -(a t^3 + b t^2 + c t).
void shard_negative(i64 a, i64 X, const std::vector<u64>& primes, CandidateSink& sink) {
    long double Xl = static_cast<long double>(X);
    long double al = a;
    long double T = std::pow(Xl / (3 * al * al * al * al), 0.25L);
    long double theta_max = 0.5L + T;
    long double v2max = std::cbrt(Xl / (4 * al * al * al * al));
    long double qmax = 0.25L + v2max;
    i64 bmax = static_cast<i64>(al * (T + 1.5L)) + 2;
    i64 cmin = static_cast<i64>(std::floor(al * (1 - theta_max))) - 2;
    i64 cmax = static_cast<i64>(std::ceil(al * (qmax + theta_max))) + 2;
    for (i64 b = -bmax; b <= bmax; ++b) {
        long double lo = std::max((-b - al) / al, -theta_max);
        long double hi = std::min((-b + al) / al, theta_max);
        if (lo > hi) continue;
        for (i64 c = cmin; c <= cmax; ++c) {
            auto g = [&](long double t) { return -((al * t + b) * t + c) * t; };
            long double gmin = std::min(g(lo), g(hi)), gmax = std::max(g(lo), g(hi));
            long double disc_d = static_cast<long double>(b) * b - 3 * al * c;
            if (disc_d > 0) {
                long double s = std::sqrt(disc_d);
                for (long double t : {(-b - s) / (3 * al), (-b + s) / (3 * al)}) {
                    if (t > lo && t < hi) {
                        gmin = std::min(gmin, g(t));
                        gmax = std::max(gmax, g(t));
                    }
                }
            }
            i64 dlo = static_cast<i64>(std::floor(gmin)) - 1;
            i64 dhi = static_cast<i64>(std::ceil(gmax)) + 1;
            for (i64 d = dlo; d <= dhi; ++d) {
                if (d == 0) continue;
                BinaryCubicForm f{a, b, c, d};
                i128 disc = disc_cubic(f);
                if (disc >= 0 || disc <= -X) continue;
                if (!is_reduced(f)) continue;
                finish_candidate(f, disc, primes, sink);
            }
        }
    }
}

}  // namespace

CubicEnumeration enumerate_cubic_fields(i64 x, u64 pmax, bool parallel) {
    if (x < 1) fail(ErrorKind::InvalidArgument, "cutoff must be positive");
    CubicEnumeration e;
    e.x = x;
    e.primes = primes_up_to(pmax);
    long double Xl = static_cast<long double>(x);
    i64 apos = static_cast<i64>(std::pow(2.0L / 3.0L, 1.5L) * std::pow(Xl, 0.25L)) + 1;
    i64 aneg = static_cast<i64>(std::pow(16 * Xl / 27, 0.25L)) + 1;
    // shard list: (sign, a)
    std::vector<std::pair<int, i64>> shards;
    for (i64 a = 1; a <= std::max(apos, aneg); ++a) {
        if (a <= apos) shards.emplace_back(1, a);
        if (a <= aneg) shards.emplace_back(-1, a);
    }
    std::vector<CandidateSink> sinks(shards.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (size_t i = 0; i < shards.size(); ++i) {
        if (shards[i].first > 0) {
            shard_positive(shards[i].second, x, e.primes, sinks[i]);
        } else {
            shard_negative(shards[i].second, x, e.primes, sinks[i]);
        }
    }
    for (auto& s : sinks) {
        e.candidates += s.candidates;
        for (auto& r : s.records) e.records.push_back(std::move(r));
    }
    std::sort(e.records.begin(), e.records.end(), [](const CubicFieldRecord& u, const CubicFieldRecord& v) {
        i64 au = u.disc < 0 ? -u.disc : u.disc, av = v.disc < 0 ? -v.disc : v.disc;
        if (au != av) return au < av;
        if (u.disc != v.disc) return u.disc < v.disc;
        return u.form < v.form;
    });
    return e;
}

FamilyStats cubic_family_stats(const CubicEnumeration& e) {
    FamilyStats s(3, e.primes);
    for (auto& r : e.records) s.add(std::log(static_cast<long double>(r.disc < 0 ? -r.disc : r.disc)), r.splitting.data());
    return s;
}

i64 quadratic_resolvent_disc(const CubicFieldRecord& r) {
    if (!r.ntr) fail(ErrorKind::TotallyRamifiedSomewhere, "record is totally ramified at some prime");
    return static_cast<i64>(fundamental_discriminant(BigInt(r.disc)));
}

CycleType resolvent_splitting(const CycleType& s) {
    if (s.degree() != 3) fail(ErrorKind::InvalidArgument, "expected a cycle type in S_3");
    if (s == CycleType({2, 1})) return CycleType({2});
    return CycleType({1, 1});
}

CubicTabulation tabulate(const CubicEnumeration& e) {
    CubicTabulation t;
    t.x = e.x;
    for (auto& r : e.records) {
        if (r.ntr) ++t.ntr_by_disc[r.disc];
    }
    return t;
}

int cl3(i64 d, const CubicTabulation& tab) {
    if (!is_fundamental_discriminant(d)) fail(ErrorKind::InvalidArgument, "not a fundamental discriminant");
    if ((d < 0 ? -d : d) >= tab.x) fail(ErrorKind::InsufficientTabulation, "tabulation does not reach |d|");
    auto it = tab.ntr_by_disc.find(d);
    return 1 + 2 * (it == tab.ntr_by_disc.end() ? 0 : it->second);
}

std::map<std::string, Rational> cubic_predicted(u64 p) {
    Rational scale(BigInt(p) * p, BigInt(p) * p + p + 1);
    return {{"(111)", scale / 6}, {"(21)", scale / 2}, {"(3)", scale / 3}};
}

CubicBruteForce cubic_bruteforce_fp(u64 p) {
    CubicBruteForce out;
    out.p = p;
    for (u64 a = 0; a < p; ++a)
        for (u64 b = 0; b < p; ++b)
            for (u64 c = 0; c < p; ++c)
                for (u64 d = 0; d < p; ++d) {
                    BinaryCubicForm f{static_cast<i64>(a), static_cast<i64>(b), static_cast<i64>(c), static_cast<i64>(d)};
                    if (mod_signed128(disc_cubic(f), p) == 0) {
                        ++out.singular;
                    } else {
                        ++out.counts[projective_type_fp(a, b, c, d, p)];
                    }
                }
    return out;
}

MaximalCensus cubic_maximal_census_mod_p2(u64 p) {
    if (!is_prime_u64(p) || p > 7) fail(ErrorKind::InvalidArgument, "census needs a prime p <= 7");
    i64 m = static_cast<i64>(p * p);
    MaximalCensus c;
    for (i64 a = 0; a < m; ++a)
        for (i64 b = 0; b < m; ++b)
            for (i64 cc = 0; cc < m; ++cc)
                for (i64 d = 0; d < m; ++d) {
                    ++c.total;
                    // Shifting by p^2 keeps residues and avoids a zero discriminant.
                    BinaryCubicForm f{a + m, b, cc, d + 7 * m};
                    if (disc_cubic(f) == 0) f.c += m;
                    c.maximal += is_DH_maximal(f, p);
                }
    return c;
}

}  // namespace arithstat
