#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace ftle {

// Static block partition of [0, n) over `threads` workers. Each index is
// handled exactly once and results land in disjoint slots, so the outcome is
// independent of scheduling.
template <class Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<std::int64_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min(n, begin + chunk);
    pool.emplace_back([begin, end, &fn] {
      for (std::int64_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ftle
