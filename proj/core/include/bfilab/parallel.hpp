#ifndef BFILAB_PARALLEL_HPP
#define BFILAB_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace bfilab {

// Global worker-count bound, set by the CLI --threads flag. 0 means
// hardware concurrency. Results never depend on this value: parallel loops
// write per-index results and reduce them in a fixed order.
void set_default_threads(int n);
int default_threads();
int resolve_threads(int requested);

// Runs fn(i) for i in [0, count). Work items are claimed dynamically but
// each item's output must go to storage indexed by i, so the outcome is
// identical for any thread count (including 1).
template <class Fn>
void parallel_for(uint64_t count, Fn&& fn, int threads = 0) {
  int t = resolve_threads(threads);
  if (count == 0) return;
  if (t <= 1 || count == 1) {
    for (uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<uint64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  uint64_t nthreads = std::min<uint64_t>(static_cast<uint64_t>(t), count);
  pool.reserve(nthreads);
  for (uint64_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace bfilab

#endif  // BFILAB_PARALLEL_HPP
