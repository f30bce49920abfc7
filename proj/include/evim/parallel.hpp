#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace evim {

// Resolves the worker count: EVIM_THREADS caps it when set to a positive
// integer, otherwise the OpenMP default applies.  Serial builds return 1.
inline int resolve_thread_count() {
#if defined(_OPENMP)
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("EVIM_THREADS")) {
    char* end = nullptr;
    long requested = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && requested > 0 && requested < n) {
      n = static_cast<int>(requested);
    }
  }
  return n;
#else
  return 1;
#endif
}

// Runs body(i) for i in [0, count).  Iterations must be independent: results
// are written to per-index slots so the schedule cannot affect the output.
// The serial path is the reference semantics; the OpenMP path must be
// observationally identical.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, bool use_parallel = true) {
#if defined(_OPENMP)
  if (use_parallel && count > 1) {
    const int threads = resolve_thread_count();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)use_parallel;
#endif
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace evim
