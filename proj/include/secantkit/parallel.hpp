#pragma once

#include <cstddef>
#include <functional>

namespace secantkit {

// Worker count used by parallel_for; defaults to the hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

// Runs fn(i) for i in [0, n). Results must be written to per-index slots so
// that output does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace secantkit
