#include "doctest.h"

#include "arithstat/padic.hpp"

using namespace arithstat;

namespace {

Rational random_rational(u64 seed, u64 i) {
    i64 num = static_cast<i64>(counter_random(seed, i, 0) % 2001) - 1000;
    if (num == 0) num = 1;
    i64 den = static_cast<i64>(counter_random(seed, i, 1) % 60) + 1;
    return Rational(num, den);
}

}  // namespace

TEST_CASE("Hilbert symbol values") {
    CHECK(hilbert_symbol(-1, -1, kInfinity) == -1);
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(-1, -1, 5) == 1);
    CHECK(hilbert_symbol(2, 3, 3) == -1);
    CHECK(hilbert_symbol(5, 7, 2) == 1);
}

TEST_CASE("closed formula agrees with solution search") {
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL}) {
        for (int a = -30; a <= 30; ++a) {
            for (int b = -30; b <= 30; b += 7) {
                if (a == 0 || b == 0) continue;
                CHECK(hilbert_symbol(a, b, p) == hilbert_symbol_search(a, b, p));
            }
        }
    }
}

TEST_CASE("product formula, symmetry, bimultiplicativity") {
    for (u64 i = 0; i < 200; ++i) {
        Rational a = random_rational(11, i), b = random_rational(12, i);
        int prod = 1;
        for (u64 v : relevant_places(a, b)) prod *= hilbert_symbol(a, b, v);
        CHECK(prod == 1);
    }
    for (u64 i = 0; i < 500; ++i) {
        Rational a = random_rational(21, i), b1 = random_rational(22, i), b2 = random_rational(23, i);
        for (u64 v : std::vector<u64>{kInfinity, 2, 3, 5, 7, 11}) {
            CHECK(hilbert_symbol(a, b1, v) == hilbert_symbol(b1, a, v));
            CHECK(hilbert_symbol(a, b1 * b2, v) == hilbert_symbol(a, b1, v) * hilbert_symbol(a, b2, v));
            CHECK(hilbert_symbol(a, -a, v) == 1);
        }
    }
}

TEST_CASE("Witt condition") {
    CHECK(witt_condition(2, 3));
    CHECK(witt_condition(5, 41));
    CHECK_FALSE(witt_condition(163, 14));
    CHECK_THROWS_AS(witt_condition(4, 3), Error);
    CHECK_THROWS_AS(witt_condition(3, 3), Error);
    for (i64 a = -20; a <= 40; ++a) {
        for (i64 b = -20; b <= 40; ++b) {
            if (a == 0 || b == 0 || a == 1 || b == 1) continue;
            if (squarefree_part(BigInt(a)) != a || squarefree_part(BigInt(b)) != b) continue;
            if (is_square_big(BigInt(a) * b)) continue;
            bool w = witt_condition(a, b);
            CHECK(w == witt_condition(b, a));
            if (w) {
                CHECK(is_sum_of_three_rational_squares(BigInt(a)));
                CHECK(is_sum_of_three_rational_squares(BigInt(b)));
                CHECK(is_sum_of_three_rational_squares(BigInt(a) * b));
            }
        }
    }
}

TEST_CASE("square roots in Q_p") {
    auto r = sqrt_in_Qp(4, 7);
    REQUIRE(r);
    BigInt m = r->modulus();
    CHECK((r->unit == 2 || r->unit == m - 2));
    auto s = sqrt_in_Qp(2, 7, 3);
    REQUIRE(s);
    CHECK((s->unit == 108 || s->unit == 343 - 108));
    CHECK_FALSE(sqrt_in_Qp(5, 7));
    CHECK_FALSE(sqrt_in_Qp(7, 7));
    auto t = sqrt_in_Qp(Rational(49, 2), 7, 10);
    REQUIRE(t);
    CHECK(t->valuation == 1);
    auto u = sqrt_in_Qp(17, 2, 20);
    REQUIRE(u);
    CHECK((u->unit * u->unit - 17) % (BigInt(1) << 20) == 0);
    CHECK_FALSE(sqrt_in_Qp(5, 2));
    CHECK_FALSE(sqrt_in_Qp(2, 2));
    for (u64 p : {3ULL, 5ULL, 13ULL, 10007ULL}) {
        for (int t0 = 1; t0 < 40; ++t0) {
            auto v = sqrt_in_Qp(t0, p, 20);
            PAdicApprox x = to_padic(t0, p, 20);
            CHECK(v.has_value() == x.is_square());
            if (v && x.valuation == 0) CHECK((v->unit * v->unit - t0) % v->modulus() == 0);
        }
    }
}

TEST_CASE("biquadratic arithmetic and embeddings") {
    BiquadraticElement one(2, 3, {1, 0, 0, 0});
    auto e = embed_biquadratic(one, 23, 10);
    REQUIRE(e.size() == 4);
    for (auto& v : e) CHECK((v.unit == 1 && v.valuation == 0));
    BiquadraticElement sa(2, 3, {0, 1, 0, 0});
    CHECK((sa * sa) == BiquadraticElement(2, 3, {2, 0, 0, 0}));
    BiquadraticElement sab(2, 3, {0, 0, 0, 1});
    CHECK((sab * sab) == BiquadraticElement(2, 3, {6, 0, 0, 0}));
    auto es = embed_biquadratic(sa, 23, 10);
    CHECK(es[0].unit == es[1].unit);
    CHECK(es[2].unit == es[3].unit);
    CHECK((es[0].unit + es[2].unit) == es[0].modulus());
    CHECK((es[0].unit * es[0].unit - 2) % es[0].modulus() == 0);
    CHECK_THROWS_AS(embed_biquadratic(sa, 5, 10), Error);

    // embeddings are ring homomorphisms
    BiquadraticElement x(2, 3, {Rational(1), Rational(1, 2), Rational(-1, 3), Rational(-1, 3)});
    BiquadraticElement y(2, 3, {Rational(3), Rational(-2), Rational(5, 7), Rational(1)});
    auto ex = embed_biquadratic(x, 23, 12), ey = embed_biquadratic(y, 23, 12), exy = embed_biquadratic(x * y, 23, 12);
    for (int i = 0; i < 4; ++i) {
        BigInt m = pow_big(BigInt(23), 12);
        BigInt lhs = ex[i].unit * ey[i].unit * pow_big(BigInt(23), ex[i].valuation + ey[i].valuation);
        BigInt rhs = exy[i].unit * pow_big(BigInt(23), exy[i].valuation);
        CHECK((lhs - rhs) % m == 0);
    }
    // norm down to Q(sqrt a) fixes sqrt a
    auto n = x * x.conj_b();
    CHECK(n.c[2] == 0);
    CHECK(n.c[3] == 0);
}

TEST_CASE("three squares") {
    CHECK(is_sum_of_three_squares(6));
    CHECK_FALSE(is_sum_of_three_squares(7));
    CHECK_FALSE(is_sum_of_three_squares(28));
    CHECK(is_sum_of_three_squares(14));
    for (int n = 0; n < 200; ++n) {
        bool brute = false;
        for (int x = 0; x * x <= n && !brute; ++x)
            for (int y = 0; x * x + y * y <= n && !brute; ++y) brute = is_square_u64(n - x * x - y * y);
        CHECK(brute == is_sum_of_three_squares(n));
    }
}
