#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace renvol {

/// Worker count: hardware concurrency capped by the RENVOL_THREADS
/// environment variable (<= 0 or unset means no cap).
inline int worker_count(int n_items) {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("RENVOL_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return std::min(n, n_items);
}

/// Run fn(i) for i in [0, n); fn must only touch its own slot.
template <typename F>
void parallel_for(int n, F&& fn) {
    const int workers = worker_count(n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace renvol
