#pragma once

#include <functional>

namespace bbsig {

int hardware_threads();

// Runs body(0..count-1) on up to `threads` workers (0 = all hardware
// threads). Work items must be independent; determinism comes from writing
// results into per-index slots.
void parallel_for(long count, int threads, const std::function<void(long)>& body);

}  // namespace bbsig
