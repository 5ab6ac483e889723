#pragma once
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace srl {

// worker count: SRLASER_THREADS env var, else hardware concurrency
inline int thread_count() {
    if (const char* env = std::getenv("SRLASER_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// run f(i) for i in [0, n) on a shared index counter; exceptions rethrown
inline void parallel_for(int n, const std::function<void(int)>& f) {
    const int workers = std::min(n, thread_count());
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace srl
