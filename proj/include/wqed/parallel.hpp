#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wqed::par {

enum class Exec { Serial, Parallel };

inline bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

/// 0 keeps the runtime default.
inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Serial reference loop. Kept separate so tests and the benchmark can compare
/// it against the OpenMP path bit for bit.
template <class F>
void serial_for(std::size_t n, F&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    body(static_cast<std::size_t>(i));
#else
  serial_for(n, body);
#endif
}

template <class F>
void for_each_index(std::size_t n, Exec mode, F&& body) {
  if (mode == Exec::Parallel)
    parallel_for(n, body);
  else
    serial_for(n, body);
}

inline double wtime() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return 0.0;
#endif
}

}  // namespace wqed::par
