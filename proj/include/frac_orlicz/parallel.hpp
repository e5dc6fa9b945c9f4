#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace frac_orlicz {

/// Worker count used when a caller passes 0.
inline std::size_t default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// out[i] = f(i) for i in [0, count), computed on up to `workers` threads.
/// Results are placed by index, so the output does not depend on scheduling.
/// The first exception thrown by f is rethrown after all workers finish.
template <class F>
auto parallel_map(std::size_t count, F&& f, std::size_t workers = 0) {
  using R = decltype(f(std::size_t{0}));
  static_assert(!std::is_same_v<R, bool>, "vector<bool> is not safe for concurrent writes");
  std::vector<R> out(count);
  if (workers == 0) workers = default_workers();
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            out[i] = f(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace frac_orlicz
