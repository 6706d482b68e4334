#include <benchmark/benchmark.h>

#include "schurlab/asymptotics.hpp"
#include "schurlab/probability.hpp"

using namespace schurlab;

static void BM_TwoTermEstimate(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(estimate_coefficient(Kind::B, SchurParams(3, 1), state.range(0), 2));
}
BENCHMARK(BM_TwoTermEstimate)->Arg(1000)->Arg(16000);

static void BM_ExactProbUk(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(exact_prob_Uk(SchurParams(5, 2), 0.6, state.range(0)));
}
BENCHMARK(BM_ExactProbUk)->Arg(0)->Arg(3);

static void BM_Simulate(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(simulate(SchurParams(3, 1), 0.5, 10000, 42));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Simulate);
BENCHMARK_MAIN();
