#ifndef CLRS_THREADS_HPP
#define CLRS_THREADS_HPP

// Deterministic block-level parallelism: a parallel_for over independent
// output slots.  Each index writes only its own slot, and all reductions are
// done by the caller afterwards in fixed index order, so results are
// bit-identical for every thread count.

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace clrs {

inline void parallel_for(std::size_t n, std::size_t num_threads,
                         const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (num_threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (num_threads > n) num_threads = n;
  std::vector<std::exception_ptr> errors(num_threads);
  std::vector<std::thread> workers;
  workers.reserve(num_threads);
  for (std::size_t t = 0; t < num_threads; ++t) {
    workers.emplace_back([&, t]() {
      const std::size_t lo = t * n / num_threads;
      const std::size_t hi = (t + 1) * n / num_threads;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace clrs

#endif  // CLRS_THREADS_HPP
