#include "doctest.h"

#include <cmath>

#include "arithstat/lowlying.hpp"
#include "arithstat/polyfactor.hpp"
#include "arithstat/quaternion.hpp"

using namespace arithstat;

namespace {

ThreeSquares dec(std::array<int, 3> u, std::array<int, 3> v) {
    return {{Rational(u[0]), Rational(u[1]), Rational(u[2])}, {Rational(v[0]), Rational(v[1]), Rational(v[2])}};
}

const QuaternionParams& p23() {
    static QuaternionParams P(2, 3, dec({1, 1, 0}, {1, -1, 1}));
    return P;
}
const QuaternionParams& p541() {
    static QuaternionParams P(5, 41, dec({0, 1, 2}, {6, -2, 1}));
    return P;
}

SplittingSymbol uniform(int e, int f) {
    return SplittingSymbol(std::vector<std::pair<int, int>>(static_cast<size_t>(8 / (e * f)), {e, f}));
}

}  // namespace

TEST_CASE("Witt condition and decompositions") {
    CHECK(witt_condition(2, 3));
    CHECK(witt_condition(5, 41));
    CHECK_FALSE(witt_condition(163, 14));
    // 163, 14 and 163*14 are each sums of three squares, yet no quaternionic field exists.
    CHECK(is_sum_of_three_squares(163));
    CHECK(is_sum_of_three_squares(14));
    CHECK(is_sum_of_three_rational_squares(BigInt(163 * 14)));
    CHECK_THROWS_AS(orthogonal_three_squares(163, 14), Error);

    CHECK(is_orthogonal_decomposition(2, 3, dec({1, 1, 0}, {1, -1, 1})));
    CHECK(is_orthogonal_decomposition(5, 41, dec({0, 1, 2}, {6, -2, 1})));
    CHECK_FALSE(is_orthogonal_decomposition(5, 41, dec({0, 1, 2}, {6, 2, 1})));
    for (auto [a, b] : {std::pair<i64, i64>{2, 3}, {5, 41}, {5, 13}, {13, 17}}) {
        if (!witt_condition(a, b)) continue;
        auto d = orthogonal_three_squares(a, b);
        REQUIRE(d);
        CHECK(is_orthogonal_decomposition(a, b, *d));
        CHECK(orthogonal_three_squares(a, b)->u == d->u);  // deterministic
    }
}

TEST_CASE("Witt condition against the three-square completion") {
    // Whenever the search succeeds, the 3x3 completion is orthogonal with the third column of norm ab.
    for (i64 a = 2; a < 30; ++a) {
        for (i64 b = a + 1; b < 30; ++b) {
            if (squarefree_part(BigInt(a)) != a || squarefree_part(BigInt(b)) != b) continue;
            if (!witt_condition(a, b)) continue;
            auto d = orthogonal_three_squares(a, b, 3);
            if (!d) continue;
            auto& u = d->u;
            auto& v = d->v;
            std::array<Rational, 3> w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
            CHECK(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] == a * b);
            CHECK(w[0] * u[0] + w[1] * u[1] + w[2] * u[2] == 0);
        }
    }
}

TEST_CASE("theta element") {
    const auto& t = p23().theta;
    CHECK(t.c[0] == 1);
    CHECK(t.c[1] == Rational(1, 2));
    CHECK(t.c[2] == Rational(-1, 3));
    CHECK(t.c[3] == Rational(-2, 6));
    for (const QuaternionParams* P : {&p23(), &p541()}) {
        auto& d = P->decomposition;
        const Rational &al = d.u[0], &ga = d.u[2], &la = d.v[0], &nu = d.v[2];
        // (1/b)(nu + (al nu - ga la)/sqrt a)^2
        Rational x = nu, y = (al * nu - ga * la) / P->a;
        auto [n0, n1] = norm_to_Qsqrta(P->theta);
        CHECK(n0 == (x * x + Rational(P->a) * y * y) / P->b);
        CHECK(n1 == 2 * x * y / P->b);
    }
}

TEST_CASE("minimal polynomial of sqrt theta has degree 8") {
    for (const QuaternionParams* P : {&p23(), &p541()}) {
        auto h = sqrt_theta_minpoly(P->theta);
        REQUIRE(h.size() == 9);
        CHECK(h[8] == 1);
        for (int i = 1; i < 9; i += 2) CHECK(h[i] == 0);
        // g(Y) = N(Y - theta) and h(T) = Res_Y(g(Y), T^2 - Y), checked at integer points T.
        auto g = theta_charpoly(P->theta);
        BigInt den = 1;
        for (auto& c : g) den = den / boost::multiprecision::gcd(den, denominator(c)) * denominator(c);
        std::vector<BigInt> gi;
        for (auto& c : g) gi.push_back(numerator(Rational(c * den)));
        for (int T = -3; T <= 3; ++T) {
            Rational hv = 0, pw = 1;
            for (auto& c : h) {
                hv += c * pw;
                pw *= T;
            }
            BigInt res = resultant(gi, {BigInt(T * T), BigInt(-1)});
            CHECK(Rational(res) == hv * den);
        }
        auto cert = sqrt_theta_degree(*P);
        CHECK(cert.conjugates_distinct);
        CHECK(cert.degree == 8);
        CHECK(cert.nonsquare_primes.size() == 3);
    }
}

TEST_CASE("Q8 character values") {
    CHECK(theta_Q8(uniform(1, 1), 1) == 2);
    CHECK(theta_Q8(uniform(1, 2), 1) == -2);
    CHECK(theta_Q8(uniform(1, 2), 2) == 2);
    CHECK(theta_Q8(uniform(1, 4), 1) == 0);
    CHECK(theta_Q8(uniform(1, 4), 2) == -2);
    CHECK(theta_Q8(uniform(1, 4), 4) == 2);
    for (int k = 1; k < 6; ++k) {
        CHECK(theta_Q8(uniform(2, 1), k) == 0);
        CHECK(theta_Q8(uniform(2, 2), k) == 0);
        CHECK(theta_Q8(uniform(4, 1), k) == 0);
    }
    // Character orthogonality over Q8 = {1, -1, 6 elements of order 4}.
    int norm2 = 2 * 2 + 2 * 2 + 6 * 0;
    CHECK(norm2 == 8);
    // Frobenius-Schur indicator (1/8) sum chi(g^2) = -1.
    int fs = theta_Q8(uniform(1, 1), 2) + theta_Q8(uniform(1, 2), 2) + 6 * theta_Q8(uniform(1, 4), 2);
    CHECK(fs == -8);
    CHECK_THROWS_AS(theta_Q8(SplittingSymbol({{1, 4}, {1, 2}, {1, 2}}), 1), Error);
}

TEST_CASE("twist parameters") {
    CHECK(is_twist_parameter(p23(), 1));
    CHECK(is_twist_parameter(p23(), 5));
    CHECK_FALSE(is_twist_parameter(p23(), 12));
    CHECK(is_twist_parameter(p541(), 12));
    CHECK(is_twist_parameter(p541(), -4));
    CHECK_FALSE(is_twist_parameter(p541(), 5));
    CHECK_FALSE(is_twist_parameter(p541(), 9));
    auto qs = twist_parameters(p541(), 30);
    CHECK(qs.front() == 1);
    CHECK(qs == std::vector<i64>{1, -3, -4, -7, -8, 8, -11, 12, 13, 17, -19, 21, -23, -24, 24, 28, 29});
}

TEST_CASE("splitting types in K_q") {
    const auto& P = p541();
    for (i64 q : twist_parameters(P, 200)) {
        for (u64 p : primes_up_to(200)) {
            SplittingSymbol s = splitting_in_Kq(P, q, p);
            CHECK(s.degree() == 8);
            LocalType m = splitting_in_M(P.a, P.b, p);
            if (p == 5 || p == 41) {
                CHECK(s == uniform(4, m.f));
            } else if (p != 2 && q % static_cast<i64>(p) == 0) {
                CHECK(s == uniform(2, m.f));
            } else if (m.f == 2 && s.unramified()) {
                CHECK(s == uniform(1, 4));
            } else if (p != 2) {
                // depends only on whether q is a square mod p
                i64 q2 = legendre_signed(q, p) == legendre_signed(1, p) ? 1 : q;
                if (q2 == 1) CHECK(s == splitting_in_Kq(P, 1, p));
            }
        }
    }
    // M-split prime: the two twists by residue and nonresidue differ.
    u64 p = 0;
    for (u64 r : primes_up_to(1000)) {
        if (r > 2 && r != 5 && r != 41 && splitting_in_M(5, 41, r).g == 4) {
            p = r;
            break;
        }
    }
    REQUIRE(p);
    i64 qres = 0, qnon = 0;
    for (i64 q : twist_parameters(P, 500)) {
        if (q % static_cast<i64>(p) == 0) continue;
        (legendre_signed(q, p) > 0 ? qres : qnon) = q;
    }
    SplittingSymbol sr = splitting_in_Kq(P, qres, p), sn = splitting_in_Kq(P, qnon, p);
    CHECK(sr != sn);
    CHECK(((sr == uniform(1, 1) && sn == uniform(1, 2)) || (sr == uniform(1, 2) && sn == uniform(1, 1))));
    // (2, 3): 2 is totally ramified in M, hence in K_q.
    CHECK(splitting_in_Kq(p23(), 5, 2) == SplittingSymbol({{8, 1}}));
    CHECK(splitting_in_Kq(p23(), 5, 5) == uniform(2, splitting_in_M(2, 3, 5).f));
    CHECK_THROWS_AS(splitting_in_Kq(P, 5, 3), Error);
}

TEST_CASE("embeddings agree for every twist") {
    const auto& P = p541();
    TwistSplitter split(P, primes_up_to(997));
    for (i64 q : twist_parameters(P, 10000)) {
        for (std::size_t i = 0; i < split.primes().size(); ++i) split.code(q, i);
    }
    // The splitter and the direct path agree.
    for (i64 q : twist_parameters(P, 300)) {
        for (std::size_t i = 0; i < split.primes().size(); i += 7) {
            CHECK(symbol_of_code(split.code(q, i)) == splitting_in_Kq(P, q, split.primes()[i]));
        }
    }
}

TEST_CASE("conductors") {
    CHECK(p23().r_ab() == 6);
    CHECK(p541().r_ab() == 205);
    std::map<int, int> alphas;
    for (i64 q : twist_parameters(p541(), 2000)) {
        ConductorInfo c = conductor_Kq(p541(), q);
        CHECK((c.alpha == 0 || c.alpha == 4));
        ++alphas[c.alpha];
        i64 odd = q < 0 ? -q : q;
        while (odd % 2 == 0) odd /= 2;
        CHECK(c.conductor == (BigInt(205 * 205) * odd * odd << c.alpha));
        // ramification at 2 in the splitting symbol matches alpha
        CHECK(splitting_in_Kq(p541(), q, 2).unramified() == (c.alpha == 0));
        // even q always ramifies at 2
        if (q % 2 == 0) CHECK(c.alpha == 4);
    }
    CHECK(alphas[0] > 0);
    CHECK(alphas[4] > 0);
    ConductorInfo c = conductor_Kq(p23(), 5);
    CHECK(c.alpha == -1);
    CHECK(c.conductor == 36 * 25);
}

TEST_CASE("2-adic test against a direct square-class check") {
    // For q odd, K_q is unramified at 2 iff q theta is a unit times a square
    // with unit = square mod 4; when a = b = 1 mod 8 this is the Q_2 criterion
    // on each embedding computed with the generic p-adic code.
    QuaternionParams P = QuaternionParams::search(17, 89);
    for (i64 q : twist_parameters(P, 300)) {
        auto images = [&] {
            BiquadraticElement t = P.theta.scaled(Rational(q));
            std::vector<bool> unram;
            auto ra = sqrt_in_Qp(Rational(17), 2, 40);
            auto rb = sqrt_in_Qp(Rational(89), 2, 40);
            REQUIRE(ra);
            REQUIRE(rb);
            BigInt m = BigInt(1) << 38;
            for (int sa : {1, -1}) {
                for (int sb : {1, -1}) {
                    Rational va(sa * BigInt(ra->unit % m)), vb(sb * BigInt(rb->unit % m));
                    Rational v = t.c[0] + t.c[1] * va + t.c[2] * vb + t.c[3] * va * vb;
                    PAdicApprox e = to_padic(v, 2, 30);
                    unram.push_back(e.valuation % 2 == 0 && mod_big(e.unit, 4) == 1);
                }
            }
            return unram;
        }();
        bool expect = images[0];
        for (bool u : images) CHECK(u == expect);
        CHECK((alpha_2adic(P, q) == 0) == expect);
    }
}

TEST_CASE("twist family densities") {
    TwistRun run = run_twists(p541(), 10000, 100);
    CHECK(run.alpha0 + run.alpha4 == run.stats.count);
    for (u64 p : run.stats.primes) {
        if (p == 2 || p == 5 || p == 41) continue;
        DensityReport r = density_from_stats(run.stats, p, twist_predicted(p541(), p), "quaternion", "1e4");
        for (auto& [k, z] : r.z_scores) CHECK_MESSAGE(std::fabs(z) < 3, "p=" << p << " " << k << " z=" << z);
    }
    TwistRun serial = run_twists(p541(), 3000, 100, false);
    TwistRun parallel = run_twists(p541(), 3000, 100, true);
    CHECK(serial.stats.hist == parallel.stats.hist);
    CHECK(serial.stats.sum_log_conductor == parallel.stats.sum_log_conductor);
}

TEST_CASE("orthogonal one-level density") {
    TwistRun run = run_twists(p541(), 3000, 997);
    ThetaFn th = theta_Q8;
    OneLevelReport r = one_level_density(run.stats, 0.25, Symmetry::SO, "3000", th);
    CHECK(r.target == doctest::Approx(1.125));
    // S2 is negative for the Q8 family (indicator -1).
    CHECK(r.sums.S2 < 0);
}
