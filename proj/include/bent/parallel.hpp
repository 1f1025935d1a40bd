#pragma once

#include <cstddef>
#include <functional>

namespace bent {

/// Worker cap used by the transform and the coefficient scans. Defaults to
/// BENT_THREADS when set, otherwise the hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Runs body(i) for i in [0, count). Work is split into contiguous chunks so
/// that each index is processed exactly once; callers write to disjoint
/// slots, which keeps results independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace bent
