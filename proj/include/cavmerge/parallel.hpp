#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace cavmerge {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, count). Tasks must write only to their own
// slots; results are then independent of the schedule, which keeps every
// caller deterministic for any thread count.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    const int n_threads = resolve_threads(threads);
    if (count == 0) return;
    if (n_threads <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(n_threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([t, workers, count, &body] {
            for (std::size_t i = t; i < count; i += workers) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace cavmerge
