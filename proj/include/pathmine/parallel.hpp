#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace pathmine {

/// Runs body(worker, begin, end) over contiguous blocks of [0, n). Blocks
/// are disjoint, so results written per index are independent of the thread
/// count. Runs inline when n is below `grain` or only one core is available.
template <typename Body>
void parallel_for(std::size_t n, std::size_t grain, Body&& body) {
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, std::max<std::size_t>(1, n / std::max<std::size_t>(1, grain)));
    if (workers <= 1) {
        body(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t block = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(n, begin + block);
        if (begin >= end) break;
        pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
    }
    for (std::thread& t : pool) t.join();
}

inline std::size_t worker_count() { return std::max<std::size_t>(1, std::thread::hardware_concurrency()); }

}  // namespace pathmine
