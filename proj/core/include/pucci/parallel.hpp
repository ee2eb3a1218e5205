#pragma once

#include <cstddef>
#include <functional>

namespace pucci {

/// Worker count for cell-parallel loops. Reads PUCCI_LAB_THREADS (a cap),
/// defaulting to the hardware concurrency; always at least 1.
std::size_t thread_count();

/// Runs body(begin, end) over disjoint chunks of [0, n). Each index is
/// visited exactly once; callers must only write to index-owned slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace pucci
