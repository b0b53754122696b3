#include <benchmark/benchmark.h>

#include "bfilab/constants.hpp"
#include "bfilab/identities.hpp"

static void BM_ConstantsEngine(benchmark::State& state) {
  const uint64_t cutoff = state.range(0);
  for (auto _ : state) {
    bfilab::ConstantsEngine engine(cutoff);
    benchmark::DoNotOptimize(engine.c1_value(1, 1));
  }
}
BENCHMARK(BM_ConstantsEngine)->Arg(10'000)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_MobiusConvolutionCheck(benchmark::State& state) {
  for (auto _ : state) {
    auto check = bfilab::mobius_convolution_check(1, 210, 2);
    benchmark::DoNotOptimize(check.equal);
  }
}
BENCHMARK(BM_MobiusConvolutionCheck);
