#ifndef KNWZNW_PARALLEL_HPP
#define KNWZNW_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace knwznw {

/// Worker count from KNWZNW_THREADS; defaults to the hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("KNWZNW_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs f(i) for i in [0, n). Each index is handled exactly once, so results
/// written per index do not depend on scheduling. The first exception wins.
template <class F>
void parallel_for(std::size_t n, F&& f, unsigned threads = thread_count()) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned k = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace knwznw

#endif  // KNWZNW_PARALLEL_HPP
