#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "arithstat/conjugacy.hpp"
#include "arithstat/polyfactor.hpp"

using namespace arithstat;

namespace {

Rational mass_at(const SatoTateMeasure& mu, const SpectralPoint& pt) {
    for (auto& [q, m] : mu.atoms) {
        if (q == pt) return m;
    }
    return 0;
}

SpectralPoint pt(std::initializer_list<Rational> a) { return SpectralPoint(std::vector<Rational>(a)); }

int fixed_points(const Permutation& g) {
    int c = 0;
    for (size_t i = 0; i < g.size(); ++i) c += g[i] == static_cast<int>(i);
    return c;
}

Permutation compose_power(const Permutation& g, int k) {
    Permutation r(g.size());
    std::iota(r.begin(), r.end(), 0);
    for (int i = 0; i < k; ++i) {
        Permutation next(g.size());
        for (size_t j = 0; j < g.size(); ++j) next[j] = g[r[j]];
        r = next;
    }
    return r;
}

// (1/|H|) sums of |chi|^2, chi^2, chi(g^2) over the elements themselves.
Indicators brute_indicators(const std::vector<Permutation>& h) {
    Rational a = 0, b = 0, c = 0;
    for (auto& g : h) {
        int chi = fixed_points(g) - 1;
        a += chi * chi;
        b += chi * chi;
        c += fixed_points(compose_power(g, 2)) - 1;
    }
    Rational size(static_cast<long long>(h.size()));
    return {a / size, b / size, c / size};
}

}  // namespace

TEST_CASE("conjugacy classes of S_n") {
    auto one = conjugacy_classes(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].size == 1);
    CHECK(one[0].char_std == 0);
    auto three = conjugacy_classes(3);
    REQUIRE(three.size() == 3);
    std::map<CycleType, std::pair<int, int>> expect = {
        {CycleType({1, 1, 1}), {1, 2}}, {CycleType({2, 1}), {3, 0}}, {CycleType({3}), {2, -1}}};
    for (auto& c : three) {
        CHECK(c.size == expect[c.cycle_type].first);
        CHECK(c.char_std == expect[c.cycle_type].second);
    }
    std::vector<size_t> counts = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int n = 1; n <= 12; ++n) {
        auto cls = conjugacy_classes(n);
        CHECK(cls.size() == counts[n - 1]);
        BigInt total = 0;
        for (auto& c : cls) total += c.size;
        CHECK(total == factorial(n));
    }
    CHECK_THROWS_AS(conjugacy_classes(13), Error);
    CHECK_THROWS_AS(conjugacy_classes(0), Error);
}

TEST_CASE("power classes") {
    CHECK(power_class(CycleType({3}), 3) == CycleType({1, 1, 1}));
    CHECK(power_class(CycleType({4}), 2) == CycleType({2, 2}));
    CHECK(power_class(CycleType({2, 1}), 2) == CycleType({1, 1, 1}));
    CHECK(power_class(CycleType({6}), 4) == CycleType({3, 3}));
    // against direct exponentiation over all of S_n
    for (int n = 2; n <= 6; ++n) {
        Permutation g(n);
        std::iota(g.begin(), g.end(), 0);
        do {
            CycleType tau = cycle_type_of(g);
            for (int k = 0; k <= 12; ++k) {
                CHECK(char_std(power_class(tau, k)) == fixed_points(compose_power(g, k)) - 1);
                CHECK(power_class(tau, k) == cycle_type_of(compose_power(g, k)));
            }
        } while (std::next_permutation(g.begin(), g.end()));
    }
}

TEST_CASE("theta coefficients match the standard character on powers") {
    for (int n = 1; n <= 8; ++n) {
        for (auto& tau : partitions(n)) {
            for (int m = 1; m <= 12; ++m) {
                CHECK(theta_coefficient(symbol_from_cycle_type(tau), m) == char_std(power_class(tau, m)));
            }
        }
    }
}

TEST_CASE("spectral points") {
    CHECK(spectral_point(CycleType({3})) == pt({Rational(1, 3), Rational(2, 3)}));
    CHECK(spectral_point(CycleType({2, 1})) == pt({0, Rational(1, 2)}));
    CHECK(spectral_point(CycleType({2, 2})) == pt({0, Rational(1, 2), Rational(1, 2)}));
}

TEST_CASE("pushforward measures") {
    auto s3 = subgroup_pushforward(parse_group_spec("Sn_standard(3)"));
    CHECK(mass_at(s3, pt({0, 0})) == Rational(1, 6));
    CHECK(mass_at(s3, pt({0, Rational(1, 2)})) == Rational(1, 2));
    CHECK(mass_at(s3, pt({Rational(1, 3), Rational(2, 3)})) == Rational(1, 3));

    auto c3 = subgroup_pushforward(parse_group_spec("C3_in_S3"));
    CHECK(c3.atoms.size() == 2);
    CHECK(mass_at(c3, pt({0, 0})) == Rational(1, 3));
    CHECK(mass_at(c3, pt({Rational(1, 3), Rational(2, 3)})) == Rational(2, 3));

    auto q8 = subgroup_pushforward(parse_group_spec("Q8_dim2"));
    CHECK(q8.dimension == 2);
    CHECK(mass_at(q8, pt({0, 0})) == Rational(1, 8));
    CHECK(mass_at(q8, pt({Rational(1, 2), Rational(1, 2)})) == Rational(1, 8));
    CHECK(mass_at(q8, pt({Rational(1, 4), Rational(3, 4)})) == Rational(3, 4));

    auto d4 = subgroup_pushforward(parse_group_spec("D4_in_S4"));
    CHECK(d4.atoms.size() == 4);
    CHECK(mass_at(d4, pt({0, 0, 0})) == Rational(1, 8));
    CHECK(mass_at(d4, pt({0, 0, Rational(1, 2)})) == Rational(1, 4));
    CHECK(mass_at(d4, pt({Rational(1, 2), Rational(1, 4), Rational(3, 4)})) == Rational(1, 4));
    CHECK(mass_at(d4, pt({0, Rational(1, 2), Rational(1, 2)})) == Rational(3, 8));

    for (int n = 2; n <= 8; ++n) {
        auto mu = subgroup_pushforward(parse_group_spec("Sn_standard(" + std::to_string(n) + ")"));
        Rational mean_trace = 0;
        for (auto& c : conjugacy_classes(n)) {
            CHECK(mass_at(mu, spectral_point(c.cycle_type)) == Rational(c.size, factorial(n)));
            mean_trace += Rational(c.size, factorial(n)) * c.char_std;
        }
        CHECK(mean_trace == 0);
    }
}

TEST_CASE("indicators") {
    for (int n = 2; n <= 8; ++n) {
        auto ind = indicators(subgroup_pushforward(parse_group_spec("Sn_standard(" + std::to_string(n) + ")")));
        CHECK(ind.i1 == 1);
        CHECK(ind.i2 == 1);
        CHECK(ind.i3 == 1);
    }
    auto c3 = indicators(subgroup_pushforward(parse_group_spec("C3_in_S3")));
    CHECK((c3.i1 == 2 && c3.i2 == 2 && c3.i3 == 0));
    auto s2 = indicators(subgroup_pushforward(parse_group_spec("S2_in_S3")));
    CHECK((s2.i1 == 2 && s2.i2 == 2 && s2.i3 == 2));
    auto d4 = indicators(subgroup_pushforward(parse_group_spec("D4_in_S4")));
    CHECK((d4.i1 == 2 && d4.i2 == 2 && d4.i3 == 2));
    auto q8 = indicators(subgroup_pushforward(parse_group_spec("Q8_dim2")));
    CHECK((q8.i1 == 1 && q8.i2 == 1 && q8.i3 == -1));

    SatoTateMeasure bad;
    bad.dimension = 1;
    bad.atoms.emplace_back(pt({0}), Rational(1, 2));
    CHECK_THROWS_AS(indicators(bad), Error);
}

TEST_CASE("indicators agree with sums over group elements") {
    for (std::string spec : {"S4:(1,2,3,4);(1,3)", "S5:(1,2,3,4,5);(2,5)(3,4)", "S5:(1,2,3,4,5);(1,2)",
                             "S6:(1,2,3)(4,5,6);(1,4)", "S4:(1,2)(3,4);(1,3)(2,4)", "S5:(1,2,3)"}) {
        GroupSpec g = parse_group_spec(spec);
        auto elements = group_closure(g.n, g.generators);
        Indicators exact = indicators(subgroup_pushforward(g));
        Indicators brute = brute_indicators(elements);
        CHECK(exact.i1 == brute.i1);
        CHECK(exact.i2 == brute.i2);
        CHECK(exact.i3 == brute.i3);
    }
    CHECK(group_closure(5, parse_group_spec("S5:(1,2,3,4,5);(1,2)").generators).size() == 120);
}

TEST_CASE("two-torsion proportions") {
    CHECK(two_torsion_proportion(3) == Rational(2, 3));
    CHECK(two_torsion_proportion(4) == Rational(5, 12));
    CHECK(two_torsion_proportion(5) == Rational(13, 60));
    CHECK(two_torsion_proportion(1) == 1);
}
