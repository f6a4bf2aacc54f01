#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace scharlau {

// Worker count from SCHARLAU_THREADS, defaulting to all cores.
inline unsigned thread_count() {
    if (const char* env = std::getenv("SCHARLAU_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(begin, end) over contiguous chunks of [0, n). Chunks write to
// disjoint outputs, so results do not depend on the thread count.
template <class Body>
void parallel_chunks(std::size_t n, Body body) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, n / 64));
    if (workers <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> threads;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace scharlau
