#pragma once

#include <cstddef>
#include <functional>

namespace fks::spectral {

/// Worker count used by per-mode loops and FFTs (default 1).
void set_thread_count(int n);
int thread_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Each index is
/// processed by exactly one chunk, so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fks::spectral
