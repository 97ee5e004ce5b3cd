#include <benchmark/benchmark.h>

#include "fsb/enumerate.hpp"

static void BM_EnumerateAdmissible(benchmark::State& state) {
    fsb::LatticeContext ctx(4);
    fsb::WeightSpec w = fsb::WeightSpec::level1(4, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(fsb::enumerate_admissible(ctx, w, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateAdmissible)->Arg(6)->Arg(8)->Arg(10);

static void BM_EnumerateAll(benchmark::State& state) {
    fsb::LatticeContext ctx(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(fsb::enumerate_all(ctx, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateAll)->Arg(6)->Arg(8);
