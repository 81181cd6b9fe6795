#pragma once

#include <cstddef>
#include <functional>

#include "matrecover/core/types.hpp"

namespace matrecover {

/// Name of the environment variable holding the worker count.
inline constexpr const char* kThreadsEnv = "MATRECOVER_THREADS";

/// Worker count: MATRECOVER_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) over contiguous chunks, one per worker.
/// Bodies must write to disjoint outputs; results do not depend on the worker
/// count. The first exception thrown by any body is rethrown on the caller.
void parallel_for(Index count, const std::function<void(Index)>& body);

}  // namespace matrecover
