#pragma once
// Deterministic data parallelism: every index writes its own slot, so the
// result never depends on the worker count. SJLT_THREADS caps workers.

#include <cstdint>
#include <functional>

namespace sjlt {

// Worker count: min(SJLT_THREADS if set, hardware concurrency), at least 1.
int worker_count();

// Runs body(i) for i in [0, n) across workers with contiguous chunks.
// Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

} // namespace sjlt
