#include <benchmark/benchmark.h>

#include "schurlab/identities.hpp"
#include "schurlab/partitions.hpp"

using namespace schurlab;

static void BM_EProduct(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(series_E_product(SchurParams(3, 1), n));
    state.SetComplexityN(n);
}
BENCHMARK(BM_EProduct)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

static void BM_Inverse(benchmark::State& state) {
    const auto e = series_E_product(SchurParams(5, 2), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(inverse(e));
}
BENCHMARK(BM_Inverse)->RangeMultiplier(4)->Range(256, 4096);

static void BM_G3(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(series_g3(2, 5, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_G3)->RangeMultiplier(4)->Range(256, 4096);

static void BM_CBilateral(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(series_C_bilateral(SchurParams(3, 1), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CBilateral)->RangeMultiplier(4)->Range(256, 4096);

static void BM_OracleCount(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(count_schur_table(SchurParams(3, 1), 3, state.range(0)));
}
BENCHMARK(BM_OracleCount)->RangeMultiplier(2)->Range(50, 200);
