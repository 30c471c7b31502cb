#pragma once

#include <cstddef>
#include <functional>

namespace clab::par {

// Worker count: min(hardware_concurrency, CONVERSE_LAB_THREADS). At least 1.
std::size_t max_threads();

// Runs fn(i) for every i in [0, count). Work is split into contiguous chunks
// over at most max_threads() workers. Callers must write results into
// per-index slots; with that discipline the output is schedule-independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace clab::par
