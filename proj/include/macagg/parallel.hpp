#pragma once

#include <cstdint>
#include <utility>

namespace macagg {

// Evaluation kernels (scheme comparison rows, sweep grid cells, jam candidate
// scoring) are data-parallel over independent cells. Exec::Serial is the
// reference path; Exec::Parallel runs the same body under OpenMP. Results are
// written by cell index, so both paths produce identical output.
enum class Exec { Serial, Parallel };

template <typename F>
void parallel_for(Exec exec, int64_t n, F&& f) {
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t i = 0; i < n; ++i) f(i);
  } else {
    for (int64_t i = 0; i < n; ++i) f(i);
  }
}

}  // namespace macagg
