// Chunked parallel loop for embarrassingly parallel sweeps (coefficient
// tables, suite verification). Thread count comes from LORENTZ_THREADS,
// defaulting to the hardware concurrency; short loops run inline.

#pragma once

#include <cstddef>
#include <functional>

namespace lorentz {

// Effective thread budget (>= 1).
unsigned thread_budget();

// Splits [0, n) into contiguous chunks and runs body(begin, end) on each,
// concurrently when the budget and the loop size justify it. body must be
// safe on disjoint ranges and must not throw.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace lorentz
