#pragma once

#include <cstddef>
#include <functional>

namespace multitime {

/// Worker count: MULTITIME_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). The first exception thrown by any worker
/// is rethrown on the calling thread after all workers have joined.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace multitime
