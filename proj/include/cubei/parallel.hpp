#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace cubei {

// Worker-lane count: CUBE_INTERACT_THREADS overrides hardware parallelism.
unsigned worker_count();

// Runs fn(i) for i in [0, count) across worker lanes. Work items must be
// independent; callers merge results in index order, so the outcome is
// invariant to the lane count.
template <class F>
void parallel_for(std::size_t count, F&& fn) {
    const unsigned workers = worker_count();
    if (count <= 1 || workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, count)) - 1;
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

}  // namespace cubei
