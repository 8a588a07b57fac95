#include "ridgelab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ridgelab {

namespace {
std::atomic<int> g_jobs{0};
}

void set_global_jobs(int jobs) { g_jobs.store(jobs); }

int resolve_jobs() {
    if (const char* env = std::getenv("RIDGELAB_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const int flag = g_jobs.load();
    if (flag > 0) return flag;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn, int jobs) {
    if (n <= 0) return;
    int workers = jobs > 0 ? jobs : resolve_jobs();
    workers = static_cast<int>(std::min<std::int64_t>(workers, n));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = n * w / workers;
        const std::int64_t hi = n * (w + 1) / workers;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace ridgelab
