#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace nlcseq {

// Runs fn(0..count-1) across a fixed number of threads, strided so cheap and
// expensive cells interleave. workers = 0 means hardware concurrency. The
// first exception thrown by any worker is rethrown after all of them join;
// callers keep determinism by writing results into preallocated slots.
inline void parallel_for_index(std::size_t count, unsigned workers,
                               const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace nlcseq
