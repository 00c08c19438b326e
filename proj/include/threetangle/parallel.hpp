#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace threetangle {

// Worker count: THREETANGLE_THREADS if set (>= 1), else 1.
inline int thread_count() {
    if (const char* env = std::getenv("THREETANGLE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// Index-parallel loop with deterministic work assignment; results must be
// written to per-index slots so the evaluation order cannot matter.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace threetangle
