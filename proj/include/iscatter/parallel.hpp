#pragma once

#include <cstddef>
#include <functional>

namespace iscatter {

// Thread count: hardware concurrency capped by ISCATTER_THREADS.
std::size_t thread_count();

// Static partition of [0, n) over threads; results must be written to
// disjoint slots so the outcome is independent of execution order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace iscatter
