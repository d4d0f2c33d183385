#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace obslab {

namespace detail {
inline thread_local bool inside_parallel_for = false;
}  // namespace detail

/// Number of worker threads used by parallel sweeps. Read from the
/// OBSLAB_WORKERS environment variable, falling back to the hardware count.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("OBSLAB_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n). Each index is visited exactly once, so
/// results written to per-index slots are independent of scheduling. Nested
/// calls from inside a worker run serially.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = detail::inside_parallel_for ? 1 : std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      detail::inside_parallel_for = true;
      for (std::size_t i = w; i < n; i += workers) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace obslab
