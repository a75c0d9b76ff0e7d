#include "anchorsr/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace anchorsr {

int configure_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      const int n = std::stoi(env);
#ifdef _OPENMP
      if (n > 0) omp_set_num_threads(n);
#else
      (void)n;
#endif
    } catch (const std::exception&) {
      // ignore malformed values, keep the runtime default
    }
  }
  return thread_count();
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace anchorsr
