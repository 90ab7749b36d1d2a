#pragma once
#include <cstddef>
#include <functional>

namespace roughvol {

// Number of worker threads: ROUGHVOL_THREADS if set and > 0, otherwise the
// hardware concurrency (ROUGHVOL_THREADS=0 also means auto).
unsigned thread_budget();

// Runs fn(i) for i in [0, n). Work items must be independent; each item
// writes only its own output slot, so results are schedule-independent.
// Nested calls from inside a worker run serially to avoid oversubscription.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace roughvol
