#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace pinctl {

/// Worker count for parallel sections: PINCTL_WORKERS if set, else hardware
/// concurrency. This is the only environment variable the workbench reads.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n). Work is split into contiguous index blocks so
/// that results land at deterministic positions regardless of scheduling.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace pinctl
