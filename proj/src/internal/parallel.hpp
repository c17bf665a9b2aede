#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace covkit::internal {

// Runs fn(i) for i in [0, count) across hardware threads. Each index must
// write only its own output slot, so results never depend on scheduling.
// The first exception thrown by any worker is rethrown on the caller.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers = std::min<std::size_t>(count, hw ? hw : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  {
    std::vector<std::jthread> threads;
    threads.reserve(workers - 1);
    for (std::size_t t = 0; t + 1 < workers; ++t) threads.emplace_back(body);
    body();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace covkit::internal
