#pragma once

#include <cstddef>
#include <functional>

namespace minigraph {

// Worker count for grid sweeps: MINIGRAPH_THREADS if set (clamped to [1,256]),
// otherwise the hardware concurrency clamped to [1,8].
int thread_budget();

// Runs body(i) for i in [0, n) on up to thread_budget() threads, static
// contiguous partition. The body must only write to its own slot i; callers
// reduce the slots sequentially afterwards so results do not depend on the
// thread count. The first exception (by index) is rethrown after the join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace minigraph
