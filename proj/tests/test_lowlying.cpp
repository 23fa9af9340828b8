#include "doctest.h"

#include <cmath>

#include "arithstat/lowlying.hpp"
#include "arithstat/monicfamily.hpp"

using namespace arithstat;

TEST_CASE("Fejer test function") {
    for (double sigma : {0.1, 0.25, 0.45}) {
        TestFunction tf(sigma);
        CHECK(tf.f(0) == doctest::Approx(sigma));
        CHECK(tf.fhat(0) == 1);
        CHECK(tf.fhat(sigma) == 0);
        CHECK(tf.fhat(2 * sigma) == 0);
        CHECK(std::fabs(tf.fhat_numeric(0) - 1) < 1e-6);  // integral of f
        for (int j = 0; j < 50; ++j) {
            double u = sigma * (j / 25.0 - 1);
            CHECK(std::fabs(tf.fhat_numeric(u) - tf.fhat(u)) < 1e-6);
        }
    }
    CHECK_THROWS_AS(TestFunction(0.5), Error);
    CHECK_THROWS_AS(TestFunction(0), Error);
}

TEST_CASE("average log conductor") {
    CHECK(average_log_conductor(std::vector<BigInt>{BigInt(1)}) == 0);
    CHECK(average_log_conductor(std::vector<BigInt>{BigInt(10), BigInt(1000)}) == doctest::Approx(2 * std::log(10.0)));
    CHECK_THROWS_AS(average_log_conductor(std::vector<BigInt>{}), Error);
    FamilyStats s(3, 13);
    std::vector<SymbolCode> codes(s.primes.size(), symbol_code(SplittingSymbol({{1, 3}})));
    s.add(1.0L, codes.data());
    CHECK(average_log_conductor(s) == doctest::Approx(1.0));
}

TEST_CASE("prime sums and one-level density") {
    MonicOptions opt;
    opt.x = 100000;
    opt.pmax = 100;
    MonicRun run = run_monic_family(opt);
    auto r = one_level_density(run.stats, 0.25, Symmetry::Sp, "1e5");
    CHECK(r.target == doctest::Approx(0.875));
    CHECK(r.D == doctest::Approx(1 - (r.sums.S1 + r.sums.S2 + r.sums.S3 + r.sums.S_ram)).epsilon(1e-12));
    CHECK(r.sums.cutoff == doctest::Approx(std::exp(0.25 * r.L)));
    double s1 = 0;
    for (auto& [p, v] : r.sums.s1_by_prime) {
        CHECK(static_cast<double>(p) <= r.sums.cutoff);
        s1 += v;
    }
    CHECK(s1 == doctest::Approx(r.sums.S1));
    // second moments of Frobenius average to the indicator +1, so S2 > 0
    CHECK(r.sums.S2 > 0);
    CHECK(one_level_density(run.stats, 0.3, Symmetry::SO, "1e5").target == doctest::Approx(1.15));
    CHECK(one_level_density(run.stats, 0.3, Symmetry::Sp, "1e5").target == doctest::Approx(0.85));
    // tiny support: no prime power fits
    auto tiny = prime_sums(run.stats, TestFunction(0.05));
    CHECK(tiny.cutoff < 2);
    CHECK(tiny.S1 == 0);
    CHECK(tiny.S2 == 0);
    CHECK(tiny.S_ram == 0);
    // a cache that stops short of exp(sigma L)
    opt.pmax = 13;
    MonicRun small = run_monic_family(opt);
    CHECK_THROWS_AS(prime_sums(small.stats, TestFunction(0.45)), Error);
    CHECK(parse_symmetry("SP") == Symmetry::Sp);
    CHECK_THROWS_AS(parse_symmetry("usp"), Error);
}
