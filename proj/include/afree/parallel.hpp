#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace afree {

// Worker cap: AFREE_THREADS when set to a positive integer, otherwise the
// hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("AFREE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// fn(i) for i in [0, count). Callers write only into per-index slots, so
// results do not depend on the thread count or schedule.
inline void parallel_for(long count, const std::function<void(long)>& fn) {
  const long workers = std::min<long>(worker_count(), count);
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (long t = 0; t < workers; ++t)
    pool.emplace_back([&]() {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace afree
