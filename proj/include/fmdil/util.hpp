#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace fmdil {

// Worker count: hardware concurrency unless FMDIL_WORKERS overrides it.
inline std::int64_t parallel_worker_cap() {
    if (const char* env = std::getenv("FMDIL_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(i) for i in [0,n), possibly on several threads. Each call must
// write only to its own slot, so the outcome is independent of the worker
// count. The first exception thrown by any call is rethrown on the caller.
template <class F>
void parallel_for(std::int64_t n, F&& fn) {
    if (n <= 0) return;
    std::int64_t workers = std::min<std::int64_t>(parallel_worker_cap(), n);
    if (workers <= 1 || n < 4) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (std::int64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            std::int64_t i;
            while ((i = next.fetch_add(1)) < n) {
                if (failed.load(std::memory_order_relaxed)) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace fmdil
