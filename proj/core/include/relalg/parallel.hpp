#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <limits>
#include <thread>
#include <vector>

namespace relalg {

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1U, threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Smallest i in [0, count) with failed(i) == true, or count if none.
/// Result is independent of `threads`.
template <typename Pred>
std::size_t first_failure(std::size_t count, unsigned threads, Pred&& failed) {
  threads = std::max(1U, threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      if (failed(i)) return i;
    }
    return count;
  }
  std::atomic<std::size_t> best{count};
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        if (i >= best.load(std::memory_order_relaxed)) return;
        if (failed(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  return best.load();
}

}  // namespace relalg
