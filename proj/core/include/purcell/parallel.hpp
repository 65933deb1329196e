#pragma once

#include <cstddef>
#include <functional>

namespace purcell {

// Runs fn(i) for i in [0, count) on a bounded worker pool. Workers claim
// indices from a shared counter and write into caller-owned slots, so the
// assembled output is ordered by index no matter how work interleaves.
// threads <= 1 runs inline.
void parallel_for_indexed(size_t count, int threads, const std::function<void(size_t)>& fn);

int default_thread_count();

}  // namespace purcell
