#include "bfilab/parallel.hpp"

namespace bfilab {

namespace {
std::atomic<int> g_threads{0};
}

void set_default_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int default_threads() { return g_threads.load(); }

int resolve_threads(int requested) {
  int t = requested > 0 ? requested : g_threads.load();
  if (t <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    t = hw == 0 ? 1 : static_cast<int>(hw);
  }
  return t;
}

}  // namespace bfilab
