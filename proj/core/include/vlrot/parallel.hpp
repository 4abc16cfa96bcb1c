#pragma once

#include <cstddef>
#include <functional>

namespace vlrot {

/// Worker count: hardware concurrency capped by the VLR_THREADS environment
/// variable (read once). Always >= 1.
int worker_count();

/// Runs fn(begin, end) over a static partition of [0, n) on worker_count()
/// threads. Chunk boundaries depend only on n and the worker count, and
/// callers write disjoint outputs, so results are bit-identical for any
/// thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace vlrot
