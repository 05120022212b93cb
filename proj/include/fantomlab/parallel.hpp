#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fantomlab::detail {

inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Run fn(chunk_index) for every index in [0, chunk_count). Chunk boundaries
// are fixed by the caller, so results are identical for any worker count;
// each chunk must write only to its own bucket.
inline void run_chunks(std::uint64_t chunk_count, unsigned workers,
                       const std::function<void(std::uint64_t)>& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || chunk_count <= 1) {
        for (std::uint64_t i = 0; i < chunk_count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= chunk_count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = workers < chunk_count ? workers : static_cast<unsigned>(chunk_count);
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace fantomlab::detail
