#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace bnf {

// Index-addressed parallel for; results must be written to disjoint slots so
// the outcome is identical for any thread count.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t)>& body) {
    if (threads <= 0) threads = (int)std::thread::hardware_concurrency();
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    size_t nt = std::min<size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (size_t i = t; i < n; i += nt) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace bnf
