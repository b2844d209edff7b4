#pragma once

#include <omp.h>

namespace primroot {

// 0 means machine parallelism.
inline int resolve_threads(int requested) {
  return requested >= 1 ? requested : omp_get_max_threads();
}

}  // namespace primroot
