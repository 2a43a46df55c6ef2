#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace simgen::util {

/// Worker count: SIMGEN_THREADS when set, otherwise hardware concurrency.
inline std::size_t worker_count() {
    if (const char* env = std::getenv("SIMGEN_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<std::size_t>(n);
    }
    std::size_t hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Run body(i) for i in [0, n). Each index must write only its own output
/// slot; the first exception thrown is rethrown on the caller thread.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    body(i);
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

}  // namespace simgen::util
