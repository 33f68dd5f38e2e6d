#pragma once

#include <cstdlib>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace coarseplane {

// COARSEPLANE_THREADS caps worker threads; results of every parallel helper
// are required to be identical for any thread count.
inline int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("COARSEPLANE_THREADS")) {
        int req = std::atoi(env);
        if (req >= 1) n = req;
    }
    return n > 64 ? 64 : n;
}

// Calls f(i) for i in [0, n), partitioned into contiguous chunks.  f must not
// touch shared mutable state except slots it owns by index.  When f throws,
// the exception of the smallest throwing index is rethrown, matching what a
// serial run would surface.
template <class F>
void parallel_for(int n, F f) {
    int workers = thread_budget();
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    if (workers > n) workers = n;
    int chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::pair<int, std::exception_ptr>> errs(workers, {n, nullptr});
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        int lo = w * chunk, hi = lo + chunk > n ? n : lo + chunk;
        if (lo >= hi) break;
        auto* slot = &errs[w];
        pool.emplace_back([lo, hi, slot, &f] {
            for (int i = lo; i < hi; ++i) {
                try {
                    f(i);
                } catch (...) {
                    *slot = {i, std::current_exception()};
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    const std::pair<int, std::exception_ptr>* first = nullptr;
    for (const auto& e : errs)
        if (e.second && (!first || e.first < first->first)) first = &e;
    if (first) std::rethrow_exception(first->second);
}

// Deterministic map: out[i] = f(i), computed in parallel, order preserved.
template <class T, class F>
std::vector<T> parallel_map(int n, F f) {
    std::vector<T> out(n);
    parallel_for(n, [&](int i) { out[i] = f(i); });
    return out;
}

} // namespace coarseplane
