#pragma once

#include <cstddef>
#include <functional>

namespace abconvex {

// Worker count: min(hardware concurrency, ABCONVEX_THREADS if set).
std::size_t worker_count();

// Runs fn(i) for i in [0, n), partitioned across workers. Callers write
// results into preallocated slots indexed by i, so the outcome does not
// depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace abconvex
