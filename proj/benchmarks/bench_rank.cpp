#include <benchmark/benchmark.h>

#include "fsb/rank.hpp"

// Fraction-free elimination on a dense integer matrix of the shape the
// weight-block rank jobs produce.
static void BM_BareissRank(benchmark::State& state) {
    const long n = state.range(0);
    std::vector<std::vector<fsb::Int>> rows(static_cast<std::size_t>(n));
    long seed = 1;
    for (long i = 0; i < n; ++i) {
        rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(2 * n));
        for (long j = 0; j < 2 * n; ++j) {
            seed = (seed * 1103515245 + 12345) % 2147483648;
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (seed % 7) - 3;
        }
    }
    for (auto _ : state) {
        auto copy = rows;
        benchmark::DoNotOptimize(fsb::rank_int_rows(copy));
    }
}
BENCHMARK(BM_BareissRank)->Arg(16)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
