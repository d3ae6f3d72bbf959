#pragma once

// Deterministic fork/join helper. Work items are indexed; results are
// gathered per index, so any reduction done in index order is independent
// of the number of worker threads.

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace p3mod {

inline void parallel_for(size_t n, unsigned jobs, const std::function<void(size_t)>& fn) {
  if (jobs <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned k = std::min<size_t>(jobs, n);
  pool.reserve(k);
  for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

/// Map i -> out[i] in parallel; caller reduces out sequentially.
template <typename T>
std::vector<T> parallel_map(size_t n, unsigned jobs, const std::function<T(size_t)>& fn) {
  std::vector<T> out(n);
  parallel_for(n, jobs, [&](size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace p3mod
