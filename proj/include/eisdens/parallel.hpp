#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace eisdens {

inline unsigned default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Splits [0, count) into `workers` contiguous ranges and calls
// fn(begin, end, worker) for each, on its own thread when workers > 1.
// The first exception thrown by any worker is rethrown after all join.
template <typename Fn>
void parallel_ranges(std::uint64_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    fn(std::uint64_t{0}, count, 0u);
    return;
  }
  const std::uint64_t w = std::min<std::uint64_t>(workers, count);
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::uint64_t i = 0; i < w; ++i) {
    const std::uint64_t begin = count * i / w;
    const std::uint64_t end = count * (i + 1) / w;
    threads.emplace_back([&, begin, end, i] {
      try {
        fn(begin, end, static_cast<unsigned>(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace eisdens
