// Parallel kernels against their serial reference paths.  Arg 1 is the
// OpenMP path, arg 0 the serial one.

#include <benchmark/benchmark.h>

#include "arithstat/cubicforms.hpp"
#include "arithstat/formspaces.hpp"
#include "arithstat/monicfamily.hpp"
#include "arithstat/quaternion.hpp"

using namespace arithstat;

static void BM_MonicCubicKernel(benchmark::State& state) {
    for (auto _ : state) {
        MonicRun r = monic_cubic_kernel(BigInt(1000000), 97, state.range(0) != 0);
        benchmark::DoNotOptimize(r.stats.count);
    }
}
BENCHMARK(BM_MonicCubicKernel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_CubicFields(benchmark::State& state) {
    for (auto _ : state) {
        CubicEnumeration e = enumerate_cubic_fields(100000, 97, state.range(0) != 0);
        benchmark::DoNotOptimize(e.records.size());
    }
}
BENCHMARK(BM_CubicFields)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_PairBruteForce(benchmark::State& state) {
    for (auto _ : state) {
        PairDensity d = brute_force_pair_density(3, state.range(0) != 0);
        benchmark::DoNotOptimize(d.degenerate);
    }
}
BENCHMARK(BM_PairBruteForce)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_QuinticMonteCarlo(benchmark::State& state) {
    for (auto _ : state) {
        QuinticMonteCarlo mc = quintic_monte_carlo(2, 300, 1, state.range(0) != 0);
        benchmark::DoNotOptimize(mc.draws);
    }
}
BENCHMARK(BM_QuinticMonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_QuaternionTwists(benchmark::State& state) {
    QuaternionParams P = QuaternionParams::search(5, 41);
    for (auto _ : state) {
        TwistRun r = run_twists(P, 20000, 2000, state.range(0) != 0);
        benchmark::DoNotOptimize(r.stats.count);
    }
}
BENCHMARK(BM_QuaternionTwists)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
