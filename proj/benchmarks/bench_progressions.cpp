#include <benchmark/benchmark.h>

#include "bfilab/experiments.hpp"
#include "bfilab/progressions.hpp"
#include "bfilab/titchmarsh.hpp"

namespace {

const bfilab::PrimeTable& shared_table() {
  static bfilab::PrimeTable pt(1 << 22);
  return pt;
}

}  // namespace

static void BM_DeltaStepping(benchmark::State& state) {
  const auto& pt = shared_table();
  const uint64_t x = 1 << 20;
  const uint64_t q_max = state.range(0);
  for (auto _ : state) {
    double v = bfilab::delta_sum(pt, x, 1, q_max, 1,
                                 bfilab::DeltaMethod::kStepping, 1);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_DeltaStepping)->Arg(64)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_DeltaTransform(benchmark::State& state) {
  const auto& pt = shared_table();
  const uint64_t x = 1 << 20;
  const uint64_t q_max = state.range(0);
  for (auto _ : state) {
    double v = bfilab::delta_sum(pt, x, 1, q_max, 1,
                                 bfilab::DeltaMethod::kDivisorTransform, 1);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_DeltaTransform)->Arg(64)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_TitchmarshSum(benchmark::State& state) {
  const auto& pt = shared_table();
  const uint64_t x = state.range(0);
  auto tau = bfilab::tau_table(x);
  for (auto _ : state) {
    double v = bfilab::titchmarsh_sum(pt, x, 1, 1, tau, 1);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_TitchmarshSum)->Arg(1 << 18)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
