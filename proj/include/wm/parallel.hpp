#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace wm {

// Worker cap shared by the engines; 0 means hardware concurrency.
inline std::atomic<unsigned>& thread_limit() {
    static std::atomic<unsigned> limit{0};
    return limit;
}

inline unsigned worker_count() {
    unsigned t = thread_limit().load();
    if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
    return t;
}

// Runs f(i) for i in [0,n); results must be written to per-index slots so
// that the outcome does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const unsigned t = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < t; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; !failed && (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace wm
