#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qpg {

// Worker count resolution: explicit request > QPG_THREADS env > hardware.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char *env = std::getenv("QPG_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Static block partition of [0, n); fn(begin, end) must write only to
// caller-owned slots indexed by the work item, which keeps results
// independent of scheduling.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)> &fn) {
  if (n == 0) return;
  const std::size_t nt =
      std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
  if (nt <= 1) {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + nt - 1) / nt;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const std::size_t lo = i * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  for (auto &t : pool) t.join();
}

}  // namespace qpg
