#include "doctest.h"

#include <functional>
#include <map>

#include "arithstat/polyfactor.hpp"

using namespace arithstat;

namespace {

// All monic degree-n polynomials over Z/m, as coefficient vectors a_1..a_n.
void each_monic(int n, u64 m, const std::function<void(const MonicPoly&)>& visit) {
    std::vector<BigInt> a(n, 0);
    u64 total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    for (u64 idx = 0; idx < total; ++idx) {
        u64 t = idx;
        for (int i = 0; i < n; ++i) {
            a[i] = t % m;
            t /= m;
        }
        visit(MonicPoly(a));
    }
}

std::vector<SplittingSymbol> all_symbols(int n) {
    std::vector<std::pair<int, int>> cells;
    for (int f = 1; f <= n; ++f) {
        for (int e = 1; e * f <= n; ++e) cells.emplace_back(e, f);
    }
    std::vector<SplittingSymbol> out;
    std::vector<std::pair<int, int>> cur;
    std::function<void(size_t, int)> rec = [&](size_t start, int rest) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (size_t i = start; i < cells.size(); ++i) {
            int w = cells[i].first * cells[i].second;
            if (w > rest) continue;
            cur.push_back(cells[i]);
            rec(i, rest - w);
            cur.pop_back();
        }
    };
    rec(0, n);
    return out;
}

}  // namespace

TEST_CASE("discriminants") {
    CHECK(discriminant_monic(MonicPoly{0, -1}) == 4);
    CHECK(discriminant_monic(MonicPoly{0, 0, 7}) == -1323);
    CHECK(discriminant_monic(MonicPoly{0, 0, 0}) == 0);
    CHECK(discriminant_monic(MonicPoly{3, 5}) == 9 - 20);
    // closed form for monic cubics
    for (int a = -3; a <= 3; ++a) {
        for (int b = -4; b <= 4; ++b) {
            for (int c = -5; c <= 5; ++c) {
                long long expect = 1LL * a * a * b * b - 4LL * b * b * b - 4LL * a * a * a * c - 27LL * c * c +
                                   18LL * a * b * c;
                CHECK(discriminant_monic(MonicPoly{a, b, c}) == expect);
            }
        }
    }
    // product of squared root differences for (T-1)(T-2)(T-4)(T+3)
    MonicPoly g{-4, -7, 34, -24};
    BigInt expect = 1;
    long long r[] = {1, 2, 4, -3};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) expect *= (r[i] - r[j]) * (r[i] - r[j]);
    CHECK(discriminant_monic(g) == expect);
}

TEST_CASE("discriminant vanishes mod p exactly at repeated factors") {
    for (u64 p : {3ULL, 5ULL}) {
        each_monic(4, p, [&](const MonicPoly& f) {
            auto factors = fp::factor(f.mod(p), p);
            bool repeated = false;
            for (auto& fac : factors) repeated |= fac.mult > 1;
            CHECK((discriminant_monic(f) % p == 0) == repeated);
        });
    }
}

TEST_CASE("height comparator") {
    MonicPoly f{0, 2, 3};
    CHECK(height_below(f, 10));
    CHECK_FALSE(height_below(f, 9));
    CHECK(height_below(MonicPoly{0, 0, 0}, 1));
    MonicPoly g{5, 0, 0};
    CHECK_FALSE(height_below(g, 15625));
    CHECK(height_below(g, 15626));
}

TEST_CASE("factorization mod p") {
    MonicPoly f{0, 0, 7};
    // T^3 + 7 = (T + 1)^3 mod 3: 3 is totally ramified in Q(7^(1/3)).
    auto a = factor_mod_p(f, 3);
    REQUIRE(a.factors.size() == 1);
    CHECK(a.factors[0].mult == 3);
    CHECK(a.factors[0].poly == FpPoly{1, 1});
    auto inert = factor_mod_p(MonicPoly{0, 0, -2}, 7);
    REQUIRE(inert.factors.size() == 1);
    CHECK(fp::deg(inert.factors[0].poly) == 3);
    auto b = factor_mod_p(f, 7);
    REQUIRE(b.factors.size() == 1);
    CHECK(b.factors[0].mult == 3);
    CHECK(b.factors[0].poly == FpPoly{0, 1});
    auto c = factor_mod_p(MonicPoly{0, -1}, 5);
    REQUIRE(c.factors.size() == 2);
    CHECK(c.factors[0].poly == FpPoly{1, 1});
    CHECK(c.factors[1].poly == FpPoly{4, 1});
}

TEST_CASE("factorization reproduces input and factors are irreducible") {
    for (u64 p : {2ULL, 3ULL, 5ULL}) {
        each_monic(p == 2 ? 6 : 4, p, [&](const MonicPoly& f) {
            FpPoly prod{1};
            for (auto& fac : fp::factor(f.mod(p), p)) {
                CHECK(fp::is_irreducible(fac.poly, p));
                for (int k = 0; k < fac.mult; ++k) prod = fp::mul(prod, fac.poly, p);
            }
            CHECK(prod == f.mod(p));
        });
    }
    // a large prime, degree 5 with known roots
    u64 p = 1000000007ULL;
    FpPoly g{1};
    for (u64 r : {3ULL, 17ULL, 123456ULL}) g = fp::mul(g, FpPoly{p - r, 1}, p);
    g = fp::mul(g, FpPoly{1, 0, 1}, p);  // x^2 + 1 splits iff p = 1 mod 4
    auto factors = fp::factor(g, p);
    CHECK(factors.size() == (p % 4 == 1 ? 5u : 4u));
}

TEST_CASE("p-maximality and splitting symbols") {
    MonicPoly f{0, 0, 7};
    CHECK(is_p_maximal(f, 3));
    CHECK(splitting_symbol(f, 3).encode() == "3:1");
    CHECK(splitting_symbol(MonicPoly{0, 0, -2}, 7).encode() == "1:3");
    CHECK(splitting_symbol(MonicPoly{0, 0, -2}, 5).encode() == "1:2+1:1");
    CHECK(is_p_maximal(f, 7));
    CHECK(splitting_symbol(f, 7).encode() == "3:1");
    CHECK_FALSE(is_p_maximal(MonicPoly{5, 25}, 5));
    CHECK(is_p_maximal(MonicPoly{0, -2}, 3));
    CHECK_THROWS_AS(splitting_symbol(MonicPoly{0, 0, 0}, 3), Error);
    CHECK_THROWS_AS(splitting_symbol(MonicPoly{5, 25}, 5), Error);
    // Z[2i] is not maximal at 2
    CHECK_FALSE(is_p_maximal(MonicPoly{0, 4}, 2));
    CHECK(is_p_maximal(MonicPoly{0, 1}, 2));
}

TEST_CASE("maximal fraction over Z/p^2 is 1 - 1/p^2") {
    for (auto [n, p] : std::vector<std::pair<int, u64>>{{3, 2}, {3, 3}, {4, 2}, {2, 5}}) {
        u64 total = 0, maximal = 0;
        each_monic(n, p * p, [&](const MonicPoly& f) {
            ++total;
            maximal += is_p_maximal(f, p);
        });
        CHECK(Rational(maximal, total) == 1 - Rational(1, p * p));
        MaximalCensus c = maximal_census_mod_p2(n, p);
        CHECK(c.total == total);
        CHECK(c.maximal == maximal);
    }
    MaximalCensus c = maximal_census_mod_p2(5, 2);
    CHECK(Rational(c.maximal, c.total) == Rational(3, 4));
}

TEST_CASE("exact type counts") {
    CHECK(exact_type_count(2, 3, CycleType({1, 1})) == 3);
    CHECK(exact_type_count(2, 3, CycleType({2})) == 3);
    CHECK(exact_type_count(3, 2, CycleType({3})) == 2);
    CHECK(exact_type_count(3, 5, CycleType({3})) == 40);
    for (int n = 2; n <= 4; ++n) {
        for (u64 p : {2ULL, 3ULL, 5ULL}) {
            std::map<CycleType, long long> counts;
            long long singular = 0;
            each_monic(n, p, [&](const MonicPoly& f) {
                auto s = splitting_shape(f.mod(p), p);
                if (s.unramified()) {
                    ++counts[s.cycle_type()];
                } else {
                    ++singular;
                }
            });
            BigInt sum = singular;
            for (auto& tau : partitions(n)) {
                CHECK(exact_type_count(n, p, tau) == counts[tau]);
                sum += exact_type_count(n, p, tau);
            }
            CHECK(sum == pow_big(BigInt(p), n));
        }
    }
}

TEST_CASE("theta coefficients") {
    CHECK(theta_coefficient(decode_symbol("1:3"), 1) == -1);
    CHECK(theta_coefficient(decode_symbol("1:3"), 3) == 2);
    for (int m = 1; m <= 6; ++m) {
        CHECK(theta_coefficient(decode_symbol("2:1+1:1"), m) == 1);
        CHECK(theta_coefficient(decode_symbol("3:1"), m) == 0);
    }
}

TEST_CASE("Euler factor identity for every symbol up to degree 5") {
    CHECK(euler_factor_check(decode_symbol("1:1+1:1+1:1"), 10).ok);
    CHECK(euler_factor_check(decode_symbol("1:2+1:1"), 10).ok);
    CHECK(euler_factor_check(decode_symbol("2:1+2:1"), 10).ok);
    for (int n = 1; n <= 5; ++n) {
        for (auto& s : all_symbols(n)) {
            auto r = euler_factor_check(s, 16);
            CHECK_MESSAGE(r.ok, s.encode());
        }
    }
}

TEST_CASE("symbol encoding") {
    SplittingSymbol s({{1, 1}, {2, 1}});
    CHECK(s.encode() == "2:1+1:1");
    SplittingSymbol t({{1, 1}, {1, 2}});
    CHECK(t.encode() == "1:2+1:1");
    CHECK(decode_symbol("1:2+1:1") == t);
    CHECK(t.cycle_type() == CycleType({2, 1}));
}

TEST_CASE("irreducibility over Q") {
    CHECK(is_irreducible_over_Q(MonicPoly{0, 0, 7}));
    CHECK_FALSE(is_irreducible_over_Q(MonicPoly{-1, 0, 0}));
    CHECK_FALSE(is_irreducible_over_Q(MonicPoly{0, 0, -8}));
    CHECK(is_irreducible_over_Q(MonicPoly{0, 0, -1, -1}));
    CHECK(is_irreducible_over_Q(MonicPoly{0, 0, 0, 1}));
    // (T^2+1)(T^2+2), reducible with no rational root
    CHECK_FALSE(is_irreducible_over_Q(MonicPoly{0, 3, 0, 2}));
    // (T^2+T+1)(T^3-2)
    CHECK_FALSE(is_irreducible_over_Q(MonicPoly{1, 1, -2, -2, -2}));
    CHECK(is_irreducible_over_Q(MonicPoly{0, 0, 0, -1, -1}));
}
