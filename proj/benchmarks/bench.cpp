#include <benchmark/benchmark.h>

#include "qseries/gordon.hpp"
#include "qseries/hecke.hpp"
#include "qseries/lattice.hpp"
#include "qseries/qfunctions.hpp"
#include "qseries/verifier.hpp"

using namespace qseries;

static void BM_MulBivariate(benchmark::State& state) {
    const std::int64_t order = state.range(0);
    const Series a = theta(ThetaSpec{MonomialArg::x(), QExp(1)}, order);
    const Series b = pochhammer(MonomialArg::x(-1, QExp(1)), QExp(1), std::nullopt, order);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MulBivariate)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_Euler(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(euler(QExp(1), state.range(0)));
}
BENCHMARK(BM_Euler)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_ThetaPM(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(theta_pm({2, 1, 1}, state.range(0)));
}
BENCHMARK(BM_ThetaPM)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_LatticeEnumeration(benchmark::State& state) {
    const Quadratic2 form = theta_pm_form({3, 1, 1});
    const QExp bound(state.range(0));
    for (auto _ : state) {
        std::size_t visited = 0;
        enumerate_sg(form, form, bound, Parity::Same,
                     [&](std::int64_t, std::int64_t, int, const QExp&) { ++visited; });
        benchmark::DoNotOptimize(visited);
    }
}
BENCHMARK(BM_LatticeEnumeration)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_FTM(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(f_tm(2, 1, state.range(0)));
}
BENCHMARK(BM_FTM)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_GordonH(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gordon_h({3, 2, 0, state.range(0)}));
}
BENCHMARK(BM_GordonH)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_VerifyMain(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(run_check({.id = "MAIN", .order = state.range(0)}));
}
BENCHMARK(BM_VerifyMain)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
