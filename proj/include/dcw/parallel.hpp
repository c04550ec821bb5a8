#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dcw {

// Worker count: explicit request > DCWLAB_THREADS env > hardware concurrency.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DCWLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(item) for item in [0, count) across up to `threads` workers with a
// fixed round-robin assignment (item % threads). The assignment depends only
// on the item index, never on timing, so any aggregation the caller does in
// item order is identical for every worker count.
inline void parallel_for_index(long long count, int threads,
                               const std::function<void(long long)>& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count <= 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([t, threads, count, &fn] {
      for (long long i = t; i < count; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

} // namespace dcw
