#include <benchmark/benchmark.h>

#include "fsb/verify.hpp"

// One full monomial application on the vacuum: the inner loop of the span
// rank jobs.
static void BM_MonomialApply(benchmark::State& state) {
    fsb::LatticeContext ctx(4);
    fsb::Cocycle eps(ctx);
    fsb::FockVector vac = fsb::hw_vector(ctx, 0);
    fsb::Monomial m = fsb::Monomial::parse("g~2(-3) g~4(-2) g2(-1)", 4);
    for (auto _ : state) benchmark::DoNotOptimize(fsb::monomial_apply(eps, m, vac));
}
BENCHMARK(BM_MonomialApply);

static void BM_SpanReportDegree4(benchmark::State& state) {
    fsb::LatticeContext ctx(4);
    fsb::Cocycle eps(ctx);
    fsb::WeightSpec w = fsb::WeightSpec::level1(4, 0);
    for (auto _ : state) benchmark::DoNotOptimize(fsb::span_report(eps, w, 4));
}
BENCHMARK(BM_SpanReportDegree4);
