#pragma once

#include <cstddef>
#include <functional>

namespace graphon_dyn {

/// Worker count: hardware concurrency, capped by GRAPHON_DYN_THREADS if set.
std::size_t worker_count();

/// Calls body(i) for every i in [0, n). Indices are split into contiguous
/// ranges across workers; body must only write to per-index state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace graphon_dyn
