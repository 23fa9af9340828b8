#include "doctest.h"

#include <cmath>
#include <set>

#include "arithstat/cubicforms.hpp"

using namespace arithstat;

namespace {

Mat2 random_unimodular(u64 seed) {
    Mat2 g{1, 0, 0, 1};
    for (int step = 0; step < 6; ++step) {
        u64 r = counter_random(seed, step);
        i64 k = static_cast<i64>(r % 5) - 2;
        Mat2 e = (r >> 8) & 1 ? Mat2{1, 0, k, 1} : Mat2{1, k, 0, 1};
        if ((r >> 9) & 1) e = Mat2{0, 1, -1, 0};
        g = {g[0] * e[0] + g[1] * e[2], g[0] * e[1] + g[1] * e[3], g[2] * e[0] + g[3] * e[2], g[2] * e[1] + g[3] * e[3]};
    }
    return g;
}

bool maximal_everywhere(const BinaryCubicForm& f) {
    i128 d = disc_cubic(f);
    u64 ad = static_cast<u64>(d < 0 ? -d : d);
    for (auto& [p, e] : factor_u64(ad)) {
        if (e >= 2 && !is_DH_maximal(f, p)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("cubic form discriminant and action") {
    CHECK(disc_cubic({1, 0, 0, 7}) == -1323);
    CHECK(disc_cubic({0, 1, -1, 0}) == 1);
    CHECK(disc_cubic({1, 0, -1, 0}) == 4);
    CHECK(disc_cubic({1, 2, 1, 0}) == 0);
    CHECK(twisted_action({1, 2, 3, 4}, {-1, 0, 0, -1}) == BinaryCubicForm{-1, -2, -3, -4});
    CHECK(twisted_action({1, 2, 3, 4}, {-1, 0, 0, 1}) == BinaryCubicForm{1, -2, 3, -4});
    for (u64 seed = 0; seed < 200; ++seed) {
        BinaryCubicForm f{static_cast<i64>(counter_random(seed, 0, 1) % 11) - 5,
                          static_cast<i64>(counter_random(seed, 1, 1) % 11) - 5,
                          static_cast<i64>(counter_random(seed, 2, 1) % 11) - 5,
                          static_cast<i64>(counter_random(seed, 3, 1) % 11) - 5};
        Mat2 g = random_unimodular(seed);
        BinaryCubicForm h = twisted_action(f, g);
        CHECK(disc_cubic(h) == disc_cubic(f));
        // the Hessian is covariant: H(g.f) = H(f) composed with g
        Hessian hf = hessian(f), hh = hessian(h);
        for (i64 x = -2; x <= 2; ++x)
            for (i64 y = -2; y <= 2; ++y) {
                i128 X = g[0] * x + g[2] * y, Y = g[1] * x + g[3] * y;
                CHECK(hh.P * x * x + hh.Q * x * y + hh.R * y * y == hf.P * X * X + hf.Q * X * Y + hf.R * Y * Y);
            }
    }
}

TEST_CASE("Delone-Faddeev maximality") {
    CHECK(is_DH_maximal({1, 0, 0, 7}, 3));
    CHECK_FALSE(is_DH_maximal({25, 5, 1, 1}, 5));
    CHECK_FALSE(is_DH_maximal({2, 4, 6, 8}, 2));
    CHECK_FALSE(is_DH_maximal({1, 0, 0, 8}, 2));  // x^3 + 8 y^3 = (x + 2y)(...)
    for (u64 p : {2ULL, 3ULL, 5ULL}) {
        for (u64 seed = 0; seed < 300; ++seed) {
            i64 m = static_cast<i64>(p * p);
            BinaryCubicForm f{static_cast<i64>(counter_random(seed, 0, p) % m), static_cast<i64>(counter_random(seed, 1, p) % m),
                              static_cast<i64>(counter_random(seed, 2, p) % m), static_cast<i64>(counter_random(seed, 3, p) % m)};
            if (disc_cubic(f) == 0) continue;
            CHECK_MESSAGE(is_DH_maximal(f, p) == is_DH_maximal_bruteforce(f, p), f.to_string(), " p=", p);
        }
    }
    // proportion of maximal forms over Z/p^2 is (1 - p^-2)(1 - p^-3)
    for (u64 p : {2ULL, 3ULL}) {
        i64 m = static_cast<i64>(p * p);
        u64 good = 0, total = 0;
        for (i64 a = 0; a < m; ++a)
            for (i64 b = 0; b < m; ++b)
                for (i64 c = 0; c < m; ++c)
                    for (i64 d = 0; d < m; ++d) {
                        ++total;
                        // shift by p^2 so the discriminant is nonzero without changing residues
                        BinaryCubicForm f{a + m, b, c, d + 7 * m};
                        if (disc_cubic(f) == 0) f.c += m;
                        good += is_DH_maximal(f, p);
                    }
        Rational expect = Rational(1) - Rational(1, p * p);
        expect *= Rational(1) - Rational(1, p * p * p);
        CHECK(Rational(good, total) == expect);
    }
}

TEST_CASE("cubic splitting symbols") {
    CHECK(splitting_symbol_cubic({1, 0, 0, 7}, 3).encode() == "3:1");
    CHECK(splitting_symbol_cubic({1, 0, 0, 7}, 7).encode() == "3:1");
    CHECK(splitting_symbol_cubic({1, 0, -1, 0}, 5).encode() == "1:1+1:1+1:1");
    CHECK(splitting_symbol_cubic({1, 0, -1, -1}, 2).encode() == "1:3");
    CHECK_THROWS(splitting_symbol_cubic({1, 0, -1, 0}, 2));  // x(x - y)(x + y) is not maximal at 2
    CHECK(splitting_symbol_cubic({0, 1, -1, 0}, 3).encode() == "1:1+1:1+1:1");
    CHECK_THROWS(splitting_symbol_cubic({25, 5, 1, 1}, 5));
    // fast unramified path agrees with factoring
    for (u64 seed = 0; seed < 400; ++seed) {
        BinaryCubicForm f{static_cast<i64>(counter_random(seed, 0, 9) % 41) - 20, static_cast<i64>(counter_random(seed, 1, 9) % 41) - 20,
                          static_cast<i64>(counter_random(seed, 2, 9) % 41) - 20, static_cast<i64>(counter_random(seed, 3, 9) % 41) - 20};
        i128 d = disc_cubic(f);
        if (d == 0) continue;
        for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 101ULL, 997ULL}) {
            if (mod_signed128(d, p) == 0) continue;
            CHECK(symbol_of_code(cubic_code_unramified(f.a, f.b, f.c, f.d, d, p)) == splitting_symbol_cubic(f, p));
        }
    }
}

TEST_CASE("forms over F_p split in proportion |tau|/6") {
    for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL}) {
        auto bf = cubic_bruteforce_fp(p);
        u64 total = 0;
        for (auto& [t, n] : bf.counts) total += n;
        CHECK(Rational(bf.counts[CycleType({1, 1, 1})], total) == Rational(1, 6));
        CHECK(Rational(bf.counts[CycleType({2, 1})], total) == Rational(1, 2));
        CHECK(Rational(bf.counts[CycleType({3})], total) == Rational(1, 3));
    }
}

TEST_CASE("irreducibility of forms") {
    CHECK(is_irreducible_cubic_form({1, 0, 0, 2}));
    CHECK_FALSE(is_irreducible_cubic_form({1, 0, 0, 8}));
    CHECK_FALSE(is_irreducible_cubic_form({1, 0, -1, 0}));
    CHECK_FALSE(is_irreducible_cubic_form({6, -5, 1, 0}));
    CHECK_FALSE(is_irreducible_cubic_form({2, 1, 2, 1}));  // (2x + y)(x^2 + y^2)
    CHECK(is_irreducible_cubic_form({1, -1, -2, 1}));
    // against products of a linear and a quadratic factor
    for (i64 r = -3; r <= 3; ++r)
        for (i64 s = 1; s <= 3; ++s)
            for (i64 u = -2; u <= 2; ++u)
                for (i64 v = -2; v <= 2; ++v)
                    for (i64 w = -2; w <= 2; ++w) {
                        // (s x - r y)(u x^2 + v x y + w y^2)
                        BinaryCubicForm f{s * u, s * v - r * u, s * w - r * v, -r * w};
                        if (f.a == 0 && f.b == 0 && f.c == 0 && f.d == 0) continue;
                        CHECK_FALSE(is_irreducible_cubic_form(f));
                    }
}

TEST_CASE("reduction and canonical forms") {
    CHECK_FALSE(is_reduced({1, 0, 0, 2}));  // complex root has real part 2^{1/3}/2
    for (u64 seed = 0; seed < 300; ++seed) {
        BinaryCubicForm f{static_cast<i64>(counter_random(seed, 0, 3) % 9) + 1, static_cast<i64>(counter_random(seed, 1, 3) % 19) - 9,
                          static_cast<i64>(counter_random(seed, 2, 3) % 19) - 9, static_cast<i64>(counter_random(seed, 3, 3) % 19) - 9};
        if (!is_irreducible_cubic_form(f)) continue;
        BinaryCubicForm c = canonical_form(f);
        CHECK(is_canonical(c));
        CHECK(disc_cubic(c) == disc_cubic(f));
        for (u64 k = 0; k < 3; ++k) {
            BinaryCubicForm h = twisted_action(f, random_unimodular(seed * 7 + k));
            CHECK_MESSAGE(canonical_form(h) == c, f.to_string(), " -> ", h.to_string());
        }
    }
}

TEST_CASE("enumeration agrees with a box search") {
    const i64 X = 3000;
    auto e = enumerate_cubic_fields(X, 50, false);
    std::set<BinaryCubicForm> listed;
    for (auto& r : e.records) {
        CHECK(is_canonical(r.form));
        CHECK(canonical_form(r.form) == r.form);
        CHECK(r.disc == static_cast<i64>(disc_cubic(r.form)));
        CHECK(listed.insert(r.form).second);
    }
    const i64 B = 16;
    i64 widest = 0;
    for (auto& f : listed) widest = std::max({widest, std::abs(f.a), std::abs(f.b), std::abs(f.c), std::abs(f.d)});
    REQUIRE(widest <= B);
    std::set<BinaryCubicForm> found;
    for (i64 a = 1; a <= B; ++a)
        for (i64 b = -B; b <= B; ++b)
            for (i64 c = -B; c <= B; ++c)
                for (i64 d = -B; d <= B; ++d) {
                    BinaryCubicForm f{a, b, c, d};
                    i128 disc = disc_cubic(f);
                    if (disc == 0 || disc >= X || disc <= -X) continue;
                    if (!is_irreducible_cubic_form(f) || !maximal_everywhere(f)) continue;
                    found.insert(canonical_form(f));
                }
    CHECK(found == listed);
    // the smallest discriminants: 49 (cyclic cubic) and -23
    REQUIRE(e.records.size() > 2);
    CHECK(e.records[0].disc == -23);
    CHECK(std::count_if(e.records.begin(), e.records.end(), [](auto& r) { return r.disc == 49; }) == 1);
    CHECK(std::count_if(e.records.begin(), e.records.end(), [](auto& r) { return r.disc == -23; }) == 1);
    // parallel and serial runs agree
    auto par = enumerate_cubic_fields(X, 50, true);
    REQUIRE(par.records.size() == e.records.size());
    for (size_t i = 0; i < e.records.size(); ++i) {
        CHECK(par.records[i].form == e.records[i].form);
        CHECK(par.records[i].splitting == e.records[i].splitting);
    }
}

TEST_CASE("resolvents and 3-torsion") {
    auto e = enumerate_cubic_fields(20000, 30);
    auto tab = tabulate(e);
    CHECK(cl3(-23, tab) == 3);
    CHECK(cl3(5, tab) == 1);
    CHECK(cl3(229, tab) == 3);
    CHECK(cl3(-4, tab) == 1);
    for (i64 d : {-31, -59, -83, -107, -139}) CHECK(cl3(d, tab) == 3);
    CHECK(cl3(-3299, tab) == 9);
    CHECK_THROWS(cl3(-20003, tab));
    CHECK_THROWS(cl3(18, tab));
    for (auto& r : e.records) {
        if (!r.ntr) continue;
        i64 d = quadratic_resolvent_disc(r);
        CHECK(d == r.disc);  // nowhere totally ramified forces a fundamental discriminant
        // unramified splitting of the field determines that of the resolvent
        for (size_t i = 1; i < e.primes.size(); ++i) {
            u64 p = e.primes[i];
            auto s = symbol_of_code(r.splitting[i]);
            if (!s.unramified()) continue;
            CycleType rt = resolvent_splitting(s.cycle_type());
            CHECK((rt == CycleType({1, 1})) == (legendre_signed(d, p) == 1));
        }
    }
    CycleType c{std::vector<int>{2, 1}};
    CHECK(resolvent_splitting(c) == CycleType({2}));
}

TEST_CASE("maximal binary cubic forms mod p^2") {
    for (u64 p : {2ULL, 3ULL}) {
        MaximalCensus c = cubic_maximal_census_mod_p2(p);
        u64 q = p * p;
        CHECK(c.total == q * q * q * q);
        CHECK(Rational(c.maximal, c.total) == (1 - Rational(1, q)) * (1 - Rational(1, q * p)));
    }
}
