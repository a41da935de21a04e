#pragma once

#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fbmhull {

inline int hardware_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// 0 or negative means "use all hardware threads".
inline int resolve_workers(int requested) {
  return requested > 0 ? requested : hardware_workers();
}

// Serial reference driver. Kept separate so tests and the benchmark can
// compare it against the OpenMP kernel on identical work.
template <typename Fn>
void for_each_index_serial(std::size_t n, Fn&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

// OpenMP fan-out over [0, n). fn(i) must only write state owned by index i;
// results are then reduced serially by the caller, which makes every
// aggregate independent of the worker count. Exceptions are captured and
// rethrown once the parallel region has ended.
template <typename Fn>
void for_each_index(std::size_t n, int workers, Fn&& fn) {
  const int w = resolve_workers(workers);
  if (w <= 1 || n <= 1) {
    for_each_index_serial(n, std::forward<Fn>(fn));
    return;
  }
#ifdef _OPENMP
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(w)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    if (error) continue;
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(fbmhull_for_each_index)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
#else
  for_each_index_serial(n, std::forward<Fn>(fn));
#endif
}

#ifdef _OPENMP
inline int worker_slot() { return omp_get_thread_num(); }
#else
inline int worker_slot() { return 0; }
#endif

}  // namespace fbmhull
