#pragma once

#include <cstddef>

namespace anchorsr {

/// Environment variable read by configure_threads().
inline constexpr const char* kThreadsEnv = "ANCHORSR_THREADS";

/// Applies ANCHORSR_THREADS (if set and valid) to the OpenMP runtime.
/// Returns the thread count in effect afterwards.
int configure_threads();

int thread_count();

}  // namespace anchorsr
