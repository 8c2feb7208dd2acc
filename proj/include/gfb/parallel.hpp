#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace gfb {

/// Worker thread budget: an explicit request wins, else the GFB_THREADS
/// environment variable, else a small default. Always at least 1 and at most
/// the hardware concurrency.
inline int thread_budget(int requested = 0) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int want = requested;
  if (want <= 0) {
    if (const char* env = std::getenv("GFB_THREADS")) {
      want = std::atoi(env);
    }
  }
  if (want <= 0) want = std::min(4, hw);
  return std::max(1, std::min(want, hw));
}

/// Deterministic parallel map: fn(i) writes only to slot i of caller-owned
/// storage, so the schedule cannot leak into results and any later reduction
/// is sequential.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  if (n <= 0) return;
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace gfb
