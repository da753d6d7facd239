#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <span>
#include <thread>
#include <vector>

namespace frachardy {

// Fixed-order pairwise tree sum. The split depends only on the length,
// so the result is independent of how the terms were produced.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v));
}

// Thread count is read once from FRACHARDY_THREADS; default 1.
inline int thread_count() {
    static const int n = [] {
        const char* e = std::getenv("FRACHARDY_THREADS");
        int k = e ? std::atoi(e) : 1;
        return std::clamp(k, 1, 256);
    }();
    return n;
}

// Runs f(i) for i in [0, n). Each index writes to its own slot, so the
// output is identical for any thread count.
template <class F>
void for_each_index(int n, F&& f) {
    const int threads = thread_count();
    if (threads <= 1 || n < 64) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace frachardy
