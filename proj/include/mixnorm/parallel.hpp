#ifndef MIXNORM_PARALLEL_HPP
#define MIXNORM_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mixnorm {

// Runs fn(i) for every i in [0, n) on up to `jobs` threads. Work items are
// claimed from a shared atomic counter; each item must write only to its
// own output slot, so results are identical for every worker count — any
// aggregation across items happens after the join, in index order.
inline void parallel_for(std::int64_t n, int jobs, const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  if (jobs < 1) jobs = 1;
  const int workers = static_cast<int>(jobs < n ? jobs : n);
  if (workers == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (first_error) return;
        }
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace mixnorm

#endif  // MIXNORM_PARALLEL_HPP
