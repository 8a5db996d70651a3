#pragma once

// Minimal deterministic fan-out: chunk an index range over a fixed number of
// threads.  Callers write results into disjoint pre-sized slots, so the merge
// is order-independent.  Worker count comes from MICE_WORKERS (default 1).

#include <cstdlib>
#include <thread>
#include <vector>

namespace mice {

inline int worker_count() {
    const char* env = std::getenv("MICE_WORKERS");
    if (!env) return 1;
    int k = std::atoi(env);
    if (k < 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 && k > static_cast<int>(hw) ? static_cast<int>(hw) : k;
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const int workers = worker_count();
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([w, workers, count, &fn] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace mice
