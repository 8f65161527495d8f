#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace tilegrid {

/// Runs fn(i, worker) for every i in [0, n) on `threads` workers, handing
/// out dynamically stolen chunks. threads <= 1 runs inline on worker 0.
template <typename Fn>
void parallel_for(size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::atomic<size_t> next{0};
  size_t chunk =
      std::max<size_t>(1, n / (static_cast<size_t>(threads) * 16));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (;;) {
        size_t begin = next.fetch_add(chunk, std::memory_order_relaxed);
        if (begin >= n) return;
        size_t end = std::min(n, begin + chunk);
        for (size_t i = begin; i < end; ++i) fn(i, t);
      }
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace tilegrid
