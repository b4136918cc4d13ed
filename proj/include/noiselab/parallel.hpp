#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <thread>
#include <vector>

namespace noiselab {

// Worker count resolution: explicit request > NOISE_LAB_WORKERS > hardware.
unsigned resolve_workers(unsigned requested);

// Runs body(index, acc) for index in [first, first + count) over a fixed
// chunk grid. Acc must default-construct and provide merge(const Acc&).
// Merging is required to be commutative (integer counters, histograms), so
// results are identical for any worker count.
template <class Acc, class Body>
Acc run_indexed(std::uint64_t first, std::uint64_t count, unsigned workers, Body&& body) {
    constexpr std::uint64_t kChunk = 1024;
    Acc global;
    if (count == 0) return global;
    workers = resolve_workers(workers);
    if (workers <= 1 || count < kChunk) {
        for (std::uint64_t i = 0; i < count; ++i) body(first + i, global);
        return global;
    }
    const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
    std::atomic<std::uint64_t> next{0};
    std::mutex merge_mutex;
    auto worker = [&]() {
        Acc local;
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) break;
            const std::uint64_t lo = c * kChunk;
            const std::uint64_t hi = lo + kChunk < count ? lo + kChunk : count;
            for (std::uint64_t i = lo; i < hi; ++i) body(first + i, local);
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        global.merge(local);
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return global;
}

}  // namespace noiselab
