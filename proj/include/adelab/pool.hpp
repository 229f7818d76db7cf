#pragma once

// Order-preserving parallel map.  Worker count comes from set_worker_count
// (the CLI flag), else ADELAB_THREADS, else hardware concurrency.  Results
// are stored by input index, so output order never depends on scheduling.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace adelab {

inline int& worker_count_slot() {
    static int n = 0;
    return n;
}

inline void set_worker_count(int n) { worker_count_slot() = n; }

inline int effective_workers() {
    int n = worker_count_slot();
    if (n >= 1) return n;
    if (const char* env = std::getenv("ADELAB_THREADS")) {
        int e = std::atoi(env);
        if (e >= 1) return e;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc >= 1 ? static_cast<int>(hc) : 1;
}

template <class T, class F>
auto parallel_map_ordered(const std::vector<T>& items, F fn)
    -> std::vector<decltype(fn(std::declval<T>()))> {
    using R = decltype(fn(std::declval<T>()));
    std::vector<R> out(items.size());
    int workers = std::min<int>(effective_workers(), static_cast<int>(items.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto run = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= items.size() || failed.load()) return;
            try {
                out[i] = fn(items[i]);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(err);
    return out;
}

} // namespace adelab
