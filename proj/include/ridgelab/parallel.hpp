#pragma once

#include <cstdint>
#include <functional>

namespace ridgelab {

// Worker-count resolution: RIDGELAB_JOBS env var wins over the --jobs flag
// (set_global_jobs), which wins over hardware concurrency.
int resolve_jobs();
void set_global_jobs(int jobs);

// Static chunked parallel loop over [0, n). fn must be safe to call
// concurrently for distinct indices. jobs <= 0 means resolve_jobs().
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn, int jobs = 0);

}  // namespace ridgelab
