#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace rlen {

inline unsigned default_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1u : hc;
}

/// Run fn(i) for i in [0, count) on up to `threads` workers with a static
/// strided schedule. Results must be written to per-index slots, so the
/// outcome does not depend on the schedule. If several indices throw, the
/// exception for the smallest index is rethrown.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = default_threads();
  std::vector<std::exception_ptr> errors(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    const unsigned t_used = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::thread> workers;
    workers.reserve(t_used);
    for (unsigned t = 0; t < t_used; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < count; i += t_used) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }
}

}  // namespace rlen
