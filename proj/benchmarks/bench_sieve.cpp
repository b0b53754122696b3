#include <benchmark/benchmark.h>

#include "bfilab/sieve.hpp"

static void BM_SieveSegment(benchmark::State& state) {
  const uint64_t width = state.range(0);
  uint64_t lo = 1;
  for (auto _ : state) {
    auto seg = bfilab::sieve_segment(lo, lo + width);
    benchmark::DoNotOptimize(seg.prime_powers.data());
  }
  state.SetItemsProcessed(state.iterations() * width);
}
BENCHMARK(BM_SieveSegment)->RangeMultiplier(4)->Range(1 << 14, 1 << 22);

static void BM_PrimeTableBuild(benchmark::State& state) {
  const uint64_t limit = state.range(0);
  for (auto _ : state) {
    bfilab::PrimeTable pt(limit);
    benchmark::DoNotOptimize(pt.limit());
  }
  state.SetItemsProcessed(state.iterations() * limit);
}
BENCHMARK(BM_PrimeTableBuild)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
