#include "arithstat/formspaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <omp.h>

#include "arithstat/finitefield.hpp"
#include "arithstat/polyfactor.hpp"

namespace arithstat {

Mat3 TernaryForm::doubled_gram() const {
    return {{{2 * a11, a12, a13}, {a12, 2 * a22, a23}, {a13, a23, 2 * a33}}};
}

TernaryForm TernaryForm::from_doubled_gram(const Mat3& g) {
    if (g[0][0] % 2 || g[1][1] % 2 || g[2][2] % 2) fail(ErrorKind::InvalidArgument, "doubled Gram matrix needs an even diagonal");
    return {g[0][0] / 2, g[1][1] / 2, g[2][2] / 2, g[0][1], g[0][2], g[1][2]};
}

i128 TernaryForm::eval(i64 x, i64 y, i64 z) const {
    i128 X = x, Y = y, Z = z;
    return a11 * X * X + a22 * Y * Y + a33 * Z * Z + a12 * X * Y + a13 * X * Z + a23 * Y * Z;
}

TernaryPair::TernaryPair(const TernaryForm& a, const TernaryForm& b) : A2(a.doubled_gram()), B2(b.doubled_gram()) {}

TernaryPair TernaryPair::transformed(const Mat3& M) const {
    auto congr = [&](const Mat3& G) {
        Mat3 out{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                i128 s = 0;
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) s += static_cast<i128>(M[k][i]) * G[k][l] * M[l][j];
                out[i][j] = static_cast<i64>(s);
            }
        return out;
    };
    TernaryPair t;
    t.A2 = congr(A2);
    t.B2 = congr(B2);
    return t;
}

namespace {

// Homogeneous binary forms, coefficients from x^deg down to y^deg.
using BForm = std::vector<i128>;

BForm bmul(const BForm& u, const BForm& v) {
    BForm w(u.size() + v.size() - 1, 0);
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) w[i + j] += u[i] * v[j];
    return w;
}

BForm bsub(const BForm& u, const BForm& v) {
    BForm w(u);
    for (size_t i = 0; i < v.size(); ++i) w[i] -= v[i];
    return w;
}

}  // namespace

BinaryCubicForm resolvent_cubic(const TernaryPair& P) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static const int signs[6] = {1, -1, -1, 1, 1, -1};
    BForm total(4, 0);
    for (int s = 0; s < 6; ++s) {
        BForm prod{1};
        for (int i = 0; i < 3; ++i) {
            int j = perms[s][i];
            prod = bmul(prod, BForm{P.A2[i][j], -static_cast<i128>(P.B2[i][j])});
        }
        for (int i = 0; i < 4; ++i) total[i] += signs[s] * prod[i];
    }
    for (auto& c : total) {
        if (c % 2) fail(ErrorKind::InvalidArgument, "resolvent not integral");
        c /= 2;
    }
    return {static_cast<i64>(total[0]), static_cast<i64>(total[1]), static_cast<i64>(total[2]), static_cast<i64>(total[3])};
}

i128 disc_pair(const TernaryPair& P) { return disc_cubic(resolvent_cubic(P)); }

TernaryPair pair_from_quartic(i64 b, i64 c, i64 d, i64 e) {
    // y^2 - xz vanishes on (1 : t : t^2); the second form restricts to the quartic
    TernaryForm A{0, 1, 0, 0, -1, 0};
    TernaryForm B{e, 0, 1, d, c, b};
    return TernaryPair(A, B);
}

std::array<i128, 5> projection_quartic(const TernaryPair& P) {
    TernaryForm A = P.A(), B = P.B();
    // each form as a z^2 + b z + c with b linear and c quadratic in (x, y)
    BForm a{A.a33}, b{A.a13, A.a23}, c{A.a11, A.a12, A.a22};
    BForm d{B.a33}, e{B.a13, B.a23}, f{B.a11, B.a12, B.a22};
    BForm af_cd = bsub(bmul(a, f), bmul(c, d));
    BForm ae_bd = bsub(bmul(a, e), bmul(b, d));
    BForm bf_ce = bsub(bmul(b, f), bmul(c, e));
    BForm res = bsub(bmul(af_cd, af_cd), bmul(ae_bd, bf_ce));
    return {res[0], res[1], res[2], res[3], res[4]};
}

const std::vector<Mat3>& projection_schedule() {
    static const std::vector<Mat3> schedule = [] {
        std::vector<Mat3> s{Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
        for (u64 i = 0; s.size() < 20; ++i) {
            Mat3 m{};
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) m[r][c] = static_cast<i64>(counter_random(0x9e0c, i, r * 3 + c) % 5) - 2;
            i64 det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            if (det == 1 || det == -1) s.push_back(m);
        }
        return s;
    }();
    return schedule;
}

std::array<u64, 4> pair_census_counts(const TernaryPair& P, u64 p) {
    TernaryForm A = P.A(), B = P.B();
    std::array<u64, 4> counts{};
    for (int k = 1; k <= 4; ++k) {
        const FiniteField& F = finite_field(p, k);
        auto ca = [&](i64 v) { return F.from_int(v); };
        const FiniteField::Elt a[6] = {ca(A.a11), ca(A.a22), ca(A.a33), ca(A.a12), ca(A.a13), ca(A.a23)};
        const FiniteField::Elt b[6] = {ca(B.a11), ca(B.a22), ca(B.a33), ca(B.a12), ca(B.a13), ca(B.a23)};
        u64 n = 0;
        for (auto& v : projective_points(F, 2)) {
            FiniteField::Elt mono[6] = {F.mul(v[0], v[0]), F.mul(v[1], v[1]), F.mul(v[2], v[2]),
                                        F.mul(v[0], v[1]), F.mul(v[0], v[2]), F.mul(v[1], v[2])};
            FiniteField::Elt sa = 0, sb = 0;
            for (int i = 0; i < 6; ++i) {
                sa = F.add(sa, F.mul(a[i], mono[i]));
                sb = F.add(sb, F.mul(b[i], mono[i]));
            }
            n += sa == 0 && sb == 0;
        }
        counts[k - 1] = n;
    }
    return counts;
}

CycleType pair_census_type(const TernaryPair& P, u64 p) {
    auto N = pair_census_counts(P, p);
    i64 n1 = N[0], n2 = N[1], n3 = N[2], n4 = N[3];
    auto degenerate = [] { fail(ErrorKind::DegenerateScheme, "intersection is not four distinct points"); };
    if ((n2 - n1) % 2 || (n3 - n1) % 3 || (n4 - n2) % 4) degenerate();
    i64 o1 = n1, o2 = (n2 - n1) / 2, o3 = (n3 - n1) / 3, o4 = (n4 - n2) / 4;
    if (o2 < 0 || o3 < 0 || o4 < 0 || o1 + 2 * o2 + 3 * o3 + 4 * o4 != 4) degenerate();
    std::vector<int> parts;
    for (int i = 0; i < o4; ++i) parts.push_back(4);
    for (int i = 0; i < o3; ++i) parts.push_back(3);
    for (int i = 0; i < o2; ++i) parts.push_back(2);
    for (int i = 0; i < o1; ++i) parts.push_back(1);
    return CycleType(parts);
}

CycleType splitting_symbol_pair(const TernaryPair& P, u64 p) {
    if (p == 2) fail(ErrorKind::InvalidArgument, "pairs need an odd prime");
    if (mod_signed128(disc_pair(P), p) == 0) fail(ErrorKind::DegenerateScheme, "discriminant vanishes mod p");
    for (const Mat3& M : projection_schedule()) {
        auto g = projection_quartic(P.transformed(M));
        std::vector<u64> coeffs(5);
        bool zero = true;
        for (int i = 0; i < 5; ++i) {
            coeffs[i] = mod_signed128(g[i], p);
            zero = zero && coeffs[i] == 0;
        }
        if (zero) continue;
        SplittingSymbol s = binary_form_shape(coeffs, p);
        if (s.unramified()) return s.cycle_type();
    }
    return pair_census_type(P, p);
}

CycleType quartic_to_cubic_splitting(const CycleType& t4) {
    if (t4.degree() != 4) fail(ErrorKind::InvalidArgument, "expected a cycle type of degree 4");
    const std::string s = t4.to_string();
    if (s == "(1111)" || s == "(22)") return CycleType({1, 1, 1});
    if (s == "(211)" || s == "(4)") return CycleType({2, 1});
    return CycleType({3});  // (31)
}

PairDensity brute_force_pair_density(u64 p, bool parallel) {
    if (p == 2 || !is_prime_u64(p) || p > 7) fail(ErrorKind::InvalidArgument, "brute force needs an odd prime p <= 7");
    const u64 p6 = p * p * p * p * p * p;
    auto form_at = [p](u64 idx) {
        i64 c[6];
        for (int i = 0; i < 6; ++i) {
            c[i] = static_cast<i64>(idx % p);
            idx /= p;
        }
        return TernaryForm{c[0], c[1], c[2], c[3], c[4], c[5]};
    };
    // make sure the census fields exist before threads touch them
    for (int k = 1; k <= 4; ++k) finite_field(p, k);
    std::vector<PairDensity> parts(p6);
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (u64 i = 0; i < p6; ++i) {
        PairDensity& out = parts[i];
        TernaryForm a = form_at(i);
        for (u64 j = 0; j < p6; ++j) {
            TernaryPair P(a, form_at(j));
            ++out.total;
            if (mod_signed128(disc_pair(P), p) == 0) {
                ++out.degenerate;
                continue;
            }
            ++out.counts[splitting_symbol_pair(P, p)];
        }
    }
    PairDensity total;
    total.p = p;
    for (auto& part : parts) {
        total.total += part.total;
        total.degenerate += part.degenerate;
        for (auto& [t, n] : part.counts) total.counts[t] += n;
    }
    return total;
}

namespace {

bool is_square_signed(const BigInt& v) { return v >= 0 && is_square_big(v); }

// Integer roots of a monic integer cubic y^3 + c2 y^2 + c1 y + c0.
std::vector<BigInt> integer_roots_cubic(const BigInt& c2, const BigInt& c1, const BigInt& c0) {
    auto val = [&](const BigInt& y) { return ((y + c2) * y + c1) * y + c0; };
    long double C2 = c2.convert_to<long double>(), C1 = c1.convert_to<long double>(), C0 = c0.convert_to<long double>();
    // real roots by bisection between critical points
    auto F = [&](long double y) { return ((y + C2) * y + C1) * y + C0; };
    long double bound = 1 + std::max({std::fabs(C2), std::fabs(C1), std::fabs(C0)});
    std::vector<long double> cuts{-bound};
    long double dd = C2 * C2 - 3 * C1;
    if (dd > 0) {
        long double s = std::sqrt(dd);
        cuts.push_back((-C2 - s) / 3);
        cuts.push_back((-C2 + s) / 3);
    }
    cuts.push_back(bound);
    std::vector<BigInt> roots;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        long double lo = cuts[i], hi = cuts[i + 1];
        for (int it = 0; it < 300; ++it) {
            long double mid = (lo + hi) / 2;
            if ((F(mid) < 0) == (F(lo) < 0)) lo = mid; else hi = mid;
        }
        long double r = (lo + hi) / 2;
        BigInt r0(static_cast<long long>(std::llround(r)));
        for (int delta = -2; delta <= 2; ++delta) {
            BigInt y = r0 + delta;
            if (val(y) == 0 && std::find(roots.begin(), roots.end(), y) == roots.end()) roots.push_back(y);
        }
    }
    return roots;
}

}  // namespace

std::string classify_monic_quartic(const BigInt& b, const BigInt& c, const BigInt& d, const BigInt& e) {
    MonicPoly h(std::vector<BigInt>{b, c, d, e});
    BigInt disc = discriminant_monic(h);
    if (disc == 0) fail(ErrorKind::ZeroDiscriminant, "quartic has a repeated root");
    if (!is_irreducible_over_Q(h)) return "reducible";
    // resolvent roots a1 a2 + a3 a4 etc.
    BigInt r2 = -c, r1 = b * d - 4 * e, r0 = -(b * b * e - 4 * c * e + d * d);
    auto roots = integer_roots_cubic(r2, r1, r0);
    if (roots.empty()) return is_square_signed(disc) ? "A4" : "S4";
    if (roots.size() == 3) return "V4";
    const BigInt& r = roots.front();
    BigInt d1 = r * r - 4 * e, d2 = b * b - 4 * (c - r);
    auto splits = [&](const BigInt& dq) { return dq == 0 || is_square_signed(dq) || is_square_signed(dq * disc); };
    return splits(d1) && splits(d2) ? "C4" : "D4";
}

std::string classify_quartic_group(const TernaryPair& P) {
    if (disc_pair(P) == 0) fail(ErrorKind::ZeroDiscriminant, "pair has zero discriminant");
    for (const Mat3& M : projection_schedule()) {
        auto g = projection_quartic(P.transformed(M));
        if (g[0] == 0) continue;
        BigInt a(g[0]);
        BigInt b(g[1]), c = a * BigInt(g[2]), d = a * a * BigInt(g[3]), e = a * a * a * BigInt(g[4]);
        if (discriminant_monic(MonicPoly(std::vector<BigInt>{b, c, d, e})) == 0) continue;
        return classify_monic_quartic(b, c, d, e);
    }
    fail(ErrorKind::NoSeparatingProjection, "no projection separates the intersection points");
}

i64 pfaffian4(const std::array<std::array<i64, 4>, 4>& N) {
    return N[0][1] * N[2][3] - N[0][2] * N[1][3] + N[0][3] * N[1][2];
}

namespace {

const int kCross[4][4] = {{0, 4, 5, 6}, {4, 1, 7, 8}, {5, 7, 2, 9}, {6, 8, 9, 3}};

Quadric4 linear_product(const std::array<i64, 4>& l, const std::array<i64, 4>& m) {
    Quadric4 q{};
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) q[kCross[u][v]] += l[u] * m[v];
    return q;
}

}  // namespace

std::array<Quadric4, 5> pfaffian_quadrics(const AlternatingQuadruple& Q) {
    auto entry = [&](int i, int j) { return std::array<i64, 4>{Q.M[0][i][j], Q.M[1][i][j], Q.M[2][i][j], Q.M[3][i][j]}; };
    std::array<Quadric4, 5> out{};
    for (int del = 0; del < 5; ++del) {
        int r[4], n = 0;
        for (int i = 0; i < 5; ++i)
            if (i != del) r[n++] = i;
        Quadric4 t1 = linear_product(entry(r[0], r[1]), entry(r[2], r[3]));
        Quadric4 t2 = linear_product(entry(r[0], r[2]), entry(r[1], r[3]));
        Quadric4 t3 = linear_product(entry(r[0], r[3]), entry(r[1], r[2]));
        i64 sign = del % 2 ? -1 : 1;
        for (int m = 0; m < 10; ++m) out[del][m] = sign * (t1[m] - t2[m] + t3[m]);
    }
    return out;
}

namespace {

using Elt = FiniteField::Elt;

// Monomials x^2, ..., zt at every point of P^3(F_{p^k}), shared across samples.
struct PointTable {
    std::vector<std::array<std::uint16_t, 10>> mono;
};

std::array<std::uint16_t, 10> monomials(const FiniteField& F, const std::vector<Elt>& v) {
    std::array<std::uint16_t, 10> m{};
    for (int u = 0; u < 4; ++u)
        for (int w = u; w < 4; ++w) m[kCross[u][w]] = static_cast<std::uint16_t>(F.mul(v[u], v[w]));
    return m;
}

const PointTable& point_table(u64 p, int k) {
    static std::mutex mu;
    static std::map<std::pair<u64, int>, std::unique_ptr<PointTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, k}];
    if (!slot) {
        slot = std::make_unique<PointTable>();
        const FiniteField& F = finite_field(p, k);
        for (auto& v : projective_points(F, 3)) slot->mono.push_back(monomials(F, v));
    }
    return *slot;
}

constexpr u64 kTableLimit = 1u << 17;  // points kept in the shared tables

}  // namespace

std::array<u64, 5> quintic_census_counts(const AlternatingQuadruple& Q, u64 p) {
    auto quads = pfaffian_quadrics(Q);
    std::array<u64, 5> counts{};
    for (int k = 1; k <= 5; ++k) {
        const FiniteField& F = finite_field(p, k);
        // sparse coefficient lists per quadric
        std::vector<std::pair<int, Elt>> terms[5];
        for (int j = 0; j < 5; ++j)
            for (int m = 0; m < 10; ++m) {
                Elt c = F.from_int(quads[j][m]);
                if (c) terms[j].emplace_back(m, c);
            }
        auto vanishes = [&](const std::uint16_t* mono) {
            for (int j = 0; j < 5; ++j) {
                Elt acc = 0;
                for (auto& [m, c] : terms[j]) acc = F.add(acc, c == 1 ? mono[m] : F.mul(c, mono[m]));
                if (acc) return false;
            }
            return true;
        };
        u64 q = F.size();
        u64 npoints = q * q * q + q * q + q + 1;
        u64 n = 0;
        if (npoints <= kTableLimit) {
            for (auto& mono : point_table(p, k).mono) n += vanishes(mono.data());
        } else {
            for (auto& v : projective_points(F, 3)) n += vanishes(monomials(F, v).data());
        }
        counts[k - 1] = n;
    }
    return counts;
}

std::array<u64, 5> quintic_census_counts_naive(const AlternatingQuadruple& Q, u64 p) {
    std::array<u64, 5> counts{};
    for (int k = 1; k <= 5; ++k) {
        const FiniteField& F = finite_field(p, k);
        u64 n = 0;
        for (auto& v : projective_points(F, 3)) {
            Elt M[5][5];
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    Elt s = 0;
                    for (int l = 0; l < 4; ++l) s = F.add(s, F.mul(F.from_int(Q.M[l][i][j]), v[l]));
                    M[i][j] = s;
                }
            bool all_zero = true;
            for (int del = 0; del < 5 && all_zero; ++del) {
                int r[4], c = 0;
                for (int i = 0; i < 5; ++i)
                    if (i != del) r[c++] = i;
                Elt pf = F.sub(F.mul(M[r[0]][r[1]], M[r[2]][r[3]]), F.mul(M[r[0]][r[2]], M[r[1]][r[3]]));
                pf = F.add(pf, F.mul(M[r[0]][r[3]], M[r[1]][r[2]]));
                all_zero = pf == 0;
            }
            n += all_zero;
        }
        counts[k - 1] = n;
    }
    return counts;
}

CycleType quintic_type_from_counts(const std::array<u64, 5>& N) {
    i64 n1 = N[0], n2 = N[1], n3 = N[2], n4 = N[3], n5 = N[4];
    auto degenerate = [] { fail(ErrorKind::DegenerateScheme, "Pfaffian locus is not five distinct points"); };
    if ((n2 - n1) % 2 || (n3 - n1) % 3 || (n4 - n2) % 4 || (n5 - n1) % 5) degenerate();
    i64 o[6] = {0, n1, (n2 - n1) / 2, (n3 - n1) / 3, (n4 - n2) / 4, (n5 - n1) / 5};
    i64 total = 0;
    for (int d = 1; d <= 5; ++d) {
        if (o[d] < 0) degenerate();
        total += d * o[d];
    }
    if (total != 5) degenerate();
    std::vector<int> parts;
    for (int d = 5; d >= 1; --d)
        for (i64 i = 0; i < o[d]; ++i) parts.push_back(d);
    return CycleType(parts);
}

CycleType splitting_symbol_quintic(const AlternatingQuadruple& Q, u64 p) {
    return quintic_type_from_counts(quintic_census_counts(Q, p));
}

AlternatingQuadruple random_quadruple(u64 p, u64 seed, u64 index) {
    AlternatingQuadruple Q;
    int lane = 0;
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                i64 v = static_cast<i64>(counter_random(seed, index, lane++) % p);
                Q.M[m][i][j] = v;
                Q.M[m][j][i] = -v;
            }
    return Q;
}

u64 QuinticMonteCarlo::nondegenerate() const {
    u64 n = 0;
    for (auto& [t, c] : counts) n += c;
    return n;
}

QuinticMonteCarlo quintic_monte_carlo(u64 p, u64 target, u64 seed, bool parallel) {
    QuinticMonteCarlo mc;
    mc.p = p;
    mc.seed = seed;
    for (int k = 1; k <= 5; ++k) {
        const FiniteField& F = finite_field(p, k);
        u64 q = F.size();
        if (q * q * q + q * q + q + 1 <= kTableLimit) point_table(p, k);
    }
    const u64 block = 256;
    for (u64 start = 0; mc.nondegenerate() < target; start += block) {
        std::vector<int> ok(block, 0);
        std::vector<CycleType> types(block);
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
        for (u64 i = 0; i < block; ++i) {
            try {
                types[i] = splitting_symbol_quintic(random_quadruple(p, seed, start + i), p);
                ok[i] = 1;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DegenerateScheme) throw;
            }
        }
        for (u64 i = 0; i < block && mc.nondegenerate() < target; ++i) {
            ++mc.draws;
            if (ok[i]) {
                ++mc.counts[types[i]];
            } else {
                ++mc.degenerate;
            }
        }
    }
    return mc;
}

}  // namespace arithstat
