#include "arithstat/polyfactor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace arithstat {
namespace fp {

void trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly add(const FpPoly& f, const FpPoly& g, u64 p) {
    FpPoly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] = (r[i] + g[i]) % p;
    trim(r);
    return r;
}

FpPoly sub(const FpPoly& f, const FpPoly& g, u64 p) {
    FpPoly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] = (r[i] + p - g[i]) % p;
    trim(r);
    return r;
}

FpPoly mul(const FpPoly& f, const FpPoly& g, u64 p) {
    if (f.empty() || g.empty()) return {};
    FpPoly r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) {
            r[i + j] = (r[i + j] + arithstat::mulmod(f[i], g[j], p)) % p;
        }
    }
    trim(r);
    return r;
}

FpPoly scale(const FpPoly& f, u64 c, u64 p) {
    FpPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = arithstat::mulmod(f[i], c, p);
    trim(r);
    return r;
}

void divmod(const FpPoly& f, const FpPoly& g, u64 p, FpPoly& q, FpPoly& r) {
    if (g.empty()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
    r = f;
    trim(r);
    int dg = deg(g);
    if (deg(r) < dg) {
        q.clear();
        return;
    }
    q.assign(r.size() - g.size() + 1, 0);
    u64 inv = invmod(g.back(), p);
    for (int i = deg(r); i >= dg; --i) {
        u64 c = arithstat::mulmod(r[i], inv, p);
        q[i - dg] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) {
            r[i - dg + j] = (r[i - dg + j] + p - arithstat::mulmod(c, g[j], p)) % p;
        }
    }
    trim(r);
    trim(q);
}

FpPoly rem(const FpPoly& f, const FpPoly& g, u64 p) {
    FpPoly q, r;
    divmod(f, g, p, q, r);
    return r;
}

FpPoly quo(const FpPoly& f, const FpPoly& g, u64 p) {
    FpPoly q, r;
    divmod(f, g, p, q, r);
    return q;
}

FpPoly monic(const FpPoly& f, u64 p) {
    if (f.empty()) return f;
    return scale(f, invmod(f.back(), p), p);
}

FpPoly gcd(FpPoly f, FpPoly g, u64 p) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        FpPoly r = rem(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    return monic(f, p);
}

FpPoly derivative(const FpPoly& f, u64 p) {
    if (f.size() <= 1) return {};
    FpPoly d(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) d[i - 1] = arithstat::mulmod(f[i], i % p, p);
    trim(d);
    return d;
}

FpPoly mulmod(const FpPoly& f, const FpPoly& g, const FpPoly& m, u64 p) { return rem(mul(f, g, p), m, p); }

FpPoly powmod(FpPoly base, u64 e, const FpPoly& m, u64 p) {
    FpPoly result = rem(FpPoly{1}, m, p);
    base = rem(base, m, p);
    while (e) {
        if (e & 1) result = mulmod(result, base, m, p);
        base = mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

FpPoly powmod_big(FpPoly base, const BigInt& e, const FpPoly& m, u64 p) {
    FpPoly result = rem(FpPoly{1}, m, p);
    base = rem(base, m, p);
    BigInt k = e;
    while (k > 0) {
        if (bit_test(k, 0)) result = mulmod(result, base, m, p);
        base = mulmod(base, base, m, p);
        k >>= 1;
    }
    return result;
}

u64 eval(const FpPoly& f, u64 x, u64 p) {
    u64 r = 0;
    for (size_t i = f.size(); i-- > 0;) r = (arithstat::mulmod(r, x, p) + f[i]) % p;
    return r;
}

namespace {

// Squarefree decomposition: (squarefree part, multiplicity) pairs.
std::vector<std::pair<FpPoly, int>> squarefree(const FpPoly& f, u64 p) {
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly fm = monic(f, p);
    if (deg(fm) <= 0) return out;
    FpPoly d = derivative(fm, p);
    if (d.empty()) {
        // f is a p-th power: take p-th roots coefficientwise.
        FpPoly root;
        for (size_t i = 0; i < fm.size(); i += p) root.push_back(fm[i]);
        for (auto& [g, m] : squarefree(root, p)) out.emplace_back(g, m * static_cast<int>(p));
        return out;
    }
    FpPoly c = gcd(fm, d, p);
    FpPoly w = quo(fm, c, p);
    int i = 1;
    while (deg(w) > 0) {
        FpPoly y = gcd(w, c, p);
        FpPoly fac = quo(w, y, p);
        if (deg(fac) > 0) out.emplace_back(monic(fac, p), i);
        w = y;
        c = quo(c, y, p);
        ++i;
    }
    if (deg(c) > 0) {
        FpPoly root;
        for (size_t k = 0; k < c.size(); k += p) root.push_back(c[k]);
        for (auto& [g, m] : squarefree(root, p)) out.emplace_back(g, m * static_cast<int>(p));
    }
    return out;
}

// Splits a squarefree product of irreducibles of degree d.
void equal_degree(const FpPoly& f, int d, u64 p, u64& seed, std::vector<FpPoly>& out) {
    int n = deg(f);
    if (n == d) {
        out.push_back(f);
        return;
    }
    BigInt half = (pow_big(BigInt(p), static_cast<unsigned>(d)) - 1) / 2;
    while (true) {
        FpPoly a(n);
        for (int i = 0; i < n; ++i) a[i] = splitmix64(seed++) % p;
        trim(a);
        if (deg(a) <= 0) continue;
        FpPoly b;
        if (p == 2) {
            // Trace map from F_{2^d}: a + a^2 + ... + a^{2^{d-1}}.
            FpPoly t = a, term = a;
            for (int k = 1; k < d; ++k) {
                term = mulmod(term, term, f, p);
                t = add(t, term, p);
            }
            b = t;
        } else {
            b = sub(powmod_big(a, half, f, p), FpPoly{1}, p);
        }
        FpPoly g = gcd(f, b, p);
        if (deg(g) > 0 && deg(g) < n) {
            equal_degree(g, d, p, seed, out);
            equal_degree(quo(f, g, p), d, p, seed, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> distinct_degree(const FpPoly& fin, u64 p) {
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly f = monic(fin, p);
    FpPoly x{0, 1};
    FpPoly h = rem(x, f, p);
    for (int d = 1; 2 * d <= deg(f); ++d) {
        h = powmod(h, p, f, p);
        FpPoly g = gcd(f, sub(h, x, p), p);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = quo(f, g, p);
            h = rem(h, f, p);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
}

std::vector<Factor> factor(const FpPoly& fin, u64 p) {
    FpPoly f = fin;
    trim(f);
    if (f.empty()) fail(ErrorKind::InvalidArgument, "factor of zero polynomial");
    std::vector<Factor> out;
    u64 seed = 0x5eedULL;
    for (auto& [sf, mult] : squarefree(f, p)) {
        for (auto& [g, d] : distinct_degree(sf, p)) {
            std::vector<FpPoly> pieces;
            equal_degree(g, d, p, seed, pieces);
            for (auto& piece : pieces) out.push_back({piece, mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) {
        if (x.poly.size() != y.poly.size()) return x.poly.size() < y.poly.size();
        if (x.poly != y.poly) return x.poly < y.poly;
        return x.mult < y.mult;
    });
    return out;
}

std::vector<std::pair<int, int>> factor_shape(const FpPoly& fin, u64 p) {
    FpPoly f = fin;
    trim(f);
    if (f.empty()) fail(ErrorKind::InvalidArgument, "shape of zero polynomial");
    std::vector<std::pair<int, int>> out;
    for (auto& [sf, mult] : squarefree(f, p)) {
        for (auto& [g, d] : distinct_degree(sf, p)) {
            for (int k = 0; k < deg(g) / d; ++k) out.emplace_back(mult, d);
        }
    }
    return out;
}

bool is_irreducible(const FpPoly& f, u64 p) {
    auto shape = factor_shape(f, p);
    return shape.size() == 1 && shape[0].first == 1;
}

}  // namespace fp

MonicPoly::MonicPoly(std::vector<BigInt> coeffs) : a(std::move(coeffs)) {
    if (a.empty()) fail(ErrorKind::InvalidArgument, "monic polynomial needs degree >= 1");
}

MonicPoly::MonicPoly(std::initializer_list<long long> coeffs) {
    for (long long c : coeffs) a.emplace_back(c);
    if (a.empty()) fail(ErrorKind::InvalidArgument, "monic polynomial needs degree >= 1");
}

BigInt MonicPoly::coeff_low(int i) const {
    int n = degree();
    if (i == n) return 1;
    return a[n - 1 - i];
}

FpPoly MonicPoly::mod(u64 p) const {
    int n = degree();
    FpPoly f(n + 1);
    for (int i = 0; i < n; ++i) f[i] = mod_big(a[n - 1 - i], p);
    f[n] = 1 % p;
    fp::trim(f);
    return f;
}

std::string MonicPoly::to_string() const {
    std::ostringstream os;
    int n = degree();
    os << "T^" << n;
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        os << (a[i] < 0 ? " - " : " + ") << abs(a[i]);
        int e = n - 1 - i;
        if (e >= 1) os << "T";
        if (e >= 2) os << "^" << e;
    }
    return os.str();
}

namespace {

bool bareiss_i128(const std::vector<std::vector<BigInt>>& m, BigInt& out) {
    size_t n = m.size();
    long double logh = 0;
    for (auto& row : m) {
        long double s = 0;
        for (auto& v : row) {
            long double d = v.convert_to<long double>();
            s += d * d;
        }
        if (s == 0) {
            out = 0;
            return true;
        }
        logh += std::log2(s) / 2;
    }
    if (logh > 60) return false;
    std::vector<std::vector<i128>> a(n, std::vector<i128>(n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = static_cast<i128>(static_cast<long long>(m[i][j]));
    }
    int sign = 1;
    i128 prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) {
                out = 0;
                return true;
            }
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
        prev = a[k][k];
    }
    i128 d = a[n - 1][n - 1] * sign;
    bool neg = d < 0;
    u128 u = neg ? static_cast<u128>(-d) : static_cast<u128>(d);
    out = BigInt(static_cast<u64>(u >> 64));
    out <<= 64;
    out += static_cast<u64>(u);
    if (neg) out = -out;
    return true;
}

}  // namespace

BigInt determinant(std::vector<std::vector<BigInt>> a) {
    size_t n = a.size();
    if (n == 0) return 1;
    BigInt fast;
    if (bareiss_i128(a, fast)) return fast;
    int sign = 1;
    BigInt prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
        prev = a[k][k];
    }
    return a[n - 1][n - 1] * sign;
}

BigInt resultant(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
    int n = static_cast<int>(f.size()) - 1;
    int m = static_cast<int>(g.size()) - 1;
    if (n < 0 || m < 0) return 0;
    if (n == 0 && m == 0) return 1;
    int size = n + m;
    std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= n; ++j) s[i][i + j] = f[n - j];
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= m; ++j) s[m + i][i + j] = g[m - j];
    }
    return determinant(std::move(s));
}

BigInt discriminant_monic(const MonicPoly& f) {
    int n = f.degree();
    if (n == 1) return 1;
    std::vector<BigInt> low(n + 1), der(n);
    for (int i = 0; i <= n; ++i) low[i] = f.coeff_low(i);
    for (int i = 1; i <= n; ++i) der[i - 1] = low[i] * i;
    BigInt r = resultant(low, der);
    if ((n * (n - 1) / 2) % 2) r = -r;
    return r;
}

bool height_below(const MonicPoly& f, const BigInt& x) {
    if (x < 1) fail(ErrorKind::InvalidArgument, "height cutoff must be >= 1");
    int n = f.degree();
    unsigned e = static_cast<unsigned>(n * (n - 1));
    for (int i = 1; i <= n; ++i) {
        const BigInt& c = f.a[i - 1];
        if (c == 0) continue;
        if (e == 0) return true;
        if (pow_big(abs(c), e) >= pow_big(x, static_cast<unsigned>(i))) return false;
    }
    return true;
}

FpFactorization factor_mod_p(const MonicPoly& f, u64 p) { return {p, fp::factor(f.mod(p), p)}; }

bool is_p_maximal(const MonicPoly& f, u64 p) {
    int n = f.degree();
    auto factors = fp::factor(f.mod(p), p);
    FpPoly g{1}, h{1};
    bool repeated = false;
    for (auto& fac : factors) {
        g = fp::mul(g, fac.poly, p);
        for (int k = 1; k < fac.mult; ++k) h = fp::mul(h, fac.poly, p);
        repeated |= fac.mult > 1;
    }
    if (!repeated) return true;
    // F = (f - g h) / p computed on lifts with coefficients in [0, p).
    std::vector<BigInt> gh(g.size() + h.size() - 1, 0);
    for (size_t i = 0; i < g.size(); ++i) {
        for (size_t j = 0; j < h.size(); ++j) gh[i + j] += BigInt(g[i]) * h[j];
    }
    FpPoly F(n + 1, 0);
    for (int i = 0; i <= n; ++i) {
        BigInt diff = f.coeff_low(i) - (i < static_cast<int>(gh.size()) ? gh[i] : BigInt(0));
        if (diff % p != 0) fail(ErrorKind::InvalidArgument, "Dedekind lift not divisible by p");
        F[i] = mod_big(diff / p, p);
    }
    fp::trim(F);
    FpPoly common = fp::gcd(g, h, p);
    FpPoly t = fp::gcd(F, common, p);
    return fp::deg(t) == 0;
}

MaximalCensus maximal_census_mod_p2(int n, u64 p) {
    if (n < 1 || !is_prime_u64(p)) fail(ErrorKind::InvalidArgument, "need n >= 1 and p prime");
    u64 m = p * p;
    MaximalCensus c;
    c.total = 1;
    for (int i = 0; i < n; ++i) {
        if (c.total > (u64{1} << 32) / m) fail(ErrorKind::InvalidArgument, "census too large");
        c.total *= m;
    }
    std::vector<BigInt> a(static_cast<size_t>(n), 0);
    for (u64 idx = 0; idx < c.total; ++idx) {
        u64 t = idx;
        for (int i = 0; i < n; ++i) {
            a[static_cast<size_t>(i)] = t % m;
            t /= m;
        }
        c.maximal += is_p_maximal(MonicPoly(a), p);
    }
    return c;
}

SplittingSymbol splitting_shape(const FpPoly& f, u64 p) { return SplittingSymbol(fp::factor_shape(f, p)); }

SplittingSymbol splitting_symbol(const MonicPoly& f, u64 p) {
    if (discriminant_monic(f) == 0) fail(ErrorKind::ZeroDiscriminant, "discriminant is zero");
    if (!is_p_maximal(f, p)) fail(ErrorKind::NotPMaximal, "order not maximal at " + std::to_string(p));
    return splitting_shape(f.mod(p), p);
}

BigInt irreducible_count(u64 p, int k) {
    BigInt s = 0;
    for (int d = 1; d <= k; ++d) {
        if (k % d) continue;
        int mu = mobius(static_cast<u64>(d));
        if (mu == 0) continue;
        BigInt term = pow_big(BigInt(p), static_cast<unsigned>(k / d));
        s += mu > 0 ? term : BigInt(-term);
    }
    return s / k;
}

BigInt exact_type_count(int n, u64 p, const CycleType& tau) {
    if (tau.degree() != n) fail(ErrorKind::InvalidArgument, "cycle type is not a partition of n");
    BigInt count = 1;
    for (int k = 1; k <= n; ++k) {
        int m = tau.multiplicity(k);
        if (m) count *= binomial(irreducible_count(p, k), static_cast<u64>(m));
    }
    return count;
}

int theta_coefficient(const SplittingSymbol& s, int m) {
    if (m <= 0) fail(ErrorKind::InvalidArgument, "theta index must be positive");
    int total = 0;
    for (auto& [e, f] : s.factors) {
        if (m % f == 0) total += f;
    }
    return total - 1;
}

EulerCheck euler_factor_check(const SplittingSymbol& s, int precision) {
    if (precision < 2 || precision > 30) fail(ErrorKind::InvalidArgument, "precision must lie in [2, 30]");
    int N = precision;
    using Series = std::vector<Rational>;
    auto mul = [N](const Series& x, const Series& y) {
        Series r(N + 1, 0);
        for (int i = 0; i <= N; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; i + j <= N; ++j) r[i + j] += x[i] * y[j];
        }
        return r;
    };
    // (1 - u^f)^{-1}
    auto geometric = [N](int f) {
        Series r(N + 1, 0);
        for (int i = 0; i <= N; i += f) r[i] = 1;
        return r;
    };
    Series zeta_k(N + 1, 0);
    zeta_k[0] = 1;
    for (auto& [e, f] : s.factors) zeta_k = mul(zeta_k, geometric(f));

    Series log_l(N + 1, 0);
    for (int k = 1; k <= N; ++k) log_l[k] = Rational(theta_coefficient(s, k), k);
    Series l(N + 1, 0);
    l[0] = 1;
    for (int m = 1; m <= N; ++m) {
        Rational acc = 0;
        for (int k = 1; k <= m; ++k) acc += k * log_l[k] * l[m - k];
        l[m] = acc / m;
    }
    Series lhs = mul(geometric(1), l);
    EulerCheck result;
    for (int i = 0; i <= N; ++i) {
        if (lhs[i] != zeta_k[i]) {
            result.ok = false;
            result.first_bad = i;
            result.what = "zeta_p * L_p differs from zeta_K,p";
            return result;
        }
    }
    if (Rational(theta_coefficient(s, 1)) != l[1]) {
        result.ok = false;
        result.first_bad = 1;
        result.what = "theta(p) != lambda(p)";
    } else if (Rational(theta_coefficient(s, 2)) != 2 * l[2] - l[1] * l[1]) {
        result.ok = false;
        result.first_bad = 2;
        result.what = "theta(p^2) != 2 lambda(p^2) - lambda(p)^2";
    }
    return result;
}

namespace {

using cld = std::complex<long double>;

std::vector<cld> numeric_roots(const MonicPoly& f) {
    int n = f.degree();
    std::vector<long double> c(n + 1);
    long double bound = 1;
    for (int i = 0; i <= n; ++i) {
        c[i] = f.coeff_low(i).convert_to<long double>();
        if (i < n) bound = std::max(bound, 1 + std::fabs(c[i]));
    }
    auto eval = [&](cld z) {
        cld r = 0;
        for (int i = n; i >= 0; --i) r = r * z + c[i];
        return r;
    };
    std::vector<cld> z(n);
    cld seed(0.4L, 0.9L);
    cld pw = 1;
    long double radius = std::pow(bound, 1.0L / n) + 1;
    for (int i = 0; i < n; ++i) {
        pw *= seed;
        z[i] = pw * radius;
    }
    for (int it = 0; it < 2000; ++it) {
        long double change = 0;
        for (int i = 0; i < n; ++i) {
            cld denom = 1;
            for (int j = 0; j < n; ++j) {
                if (j != i) denom *= z[i] - z[j];
            }
            if (std::abs(denom) == 0) denom = 1e-30L;
            cld step = eval(z[i]) / denom;
            z[i] -= step;
            change = std::max(change, std::abs(step) / (1 + std::abs(z[i])));
        }
        if (change < 1e-17L) break;
    }
    return z;
}

bool divides_quadratic(const MonicPoly& f, const BigInt& u, const BigInt& v) {
    int n = f.degree();
    std::vector<BigInt> r(n + 1);
    for (int i = 0; i <= n; ++i) r[i] = f.coeff_low(i);
    for (int i = n; i >= 2; --i) {
        BigInt q = r[i];
        r[i] = 0;
        r[i - 1] -= q * u;
        r[i - 2] -= q * v;
    }
    return r[0] == 0 && r[1] == 0;
}

BigInt round_big(long double v) { return BigInt(static_cast<long long>(std::llround(v))); }

}  // namespace

bool is_irreducible_over_Q(const MonicPoly& f) {
    int n = f.degree();
    if (n > 5) fail(ErrorKind::InvalidArgument, "irreducibility test supports degree <= 5");
    if (n == 1) return true;
    if (f.a[n - 1] == 0) return false;
    BigInt disc = discriminant_monic(f);
    if (disc == 0) return false;
    // Degree-sum certificate: possible factor degrees are the subset sums common to every p.
    unsigned possible = (1u << (n + 1)) - 1;
    for (u64 p : primes_up_to(100)) {
        if (disc % p == 0) continue;
        auto shape = fp::factor_shape(f.mod(p), p);
        unsigned sums = 1;
        for (auto& [e, d] : shape) sums |= sums << d;
        possible &= sums;
        if ((possible & ((1u << n) - 2)) == 0) return true;
    }
    auto roots = numeric_roots(f);
    for (auto& z : roots) {
        BigInt r0 = round_big(z.real());
        for (int delta = -1; delta <= 1; ++delta) {
            BigInt r = r0 + delta;
            BigInt v = 1;
            for (int i = 0; i < n; ++i) v = v * r + f.a[i];
            if (v == 0) return false;
        }
    }
    if (n >= 4) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                BigInt u0 = round_big(-(roots[i] + roots[j]).real());
                BigInt v0 = round_big((roots[i] * roots[j]).real());
                for (int du = -1; du <= 1; ++du) {
                    for (int dv = -1; dv <= 1; ++dv) {
                        if (divides_quadratic(f, u0 + du, v0 + dv)) return false;
                    }
                }
            }
        }
    }
    return true;
}

}  // namespace arithstat
