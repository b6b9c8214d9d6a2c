#pragma once

#include <cstdint>
#include <functional>

namespace chromatic {

// Worker cap: min(hardware_concurrency, CHROMATIC_TILER_THREADS if set).
// A value of 1 disables spawning entirely.
int worker_count();

// Runs fn(i) for i in [0, count) on up to worker_count() threads.
// Each index is processed exactly once and writes only to its own slot(s),
// so results are bit-identical regardless of the thread count. Exceptions
// from workers are captured and rethrown on the calling thread.
void parallel_for(int64_t count, const std::function<void(int64_t)>& fn);

}  // namespace chromatic
