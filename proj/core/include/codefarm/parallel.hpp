#pragma once

#include <cstddef>
#include <functional>

namespace codefarm {

/// Worker cap from CODEFARM_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

/// Calls body(i) for every i in [0, count), split across up to worker_count()
/// threads. body must only write state owned by index i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace codefarm
