#pragma once

#include <cstddef>
#include <functional>

namespace ssvcg {

/// Worker count: hardware concurrency capped by SSVCG_THREADS when set.
std::size_t worker_count();

/// Calls body(i) for every i in [0, count). Work is split into contiguous
/// chunks, so any per-index output is deterministic regardless of threads.
void parallel_for(std::size_t count, std::function<void(std::size_t)> const &body);

}  // namespace ssvcg
