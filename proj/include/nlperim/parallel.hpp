#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace nlperim {

// Worker count: NLPERIM_THREADS overrides hardware concurrency.
inline int thread_count() {
    if (const char* env = std::getenv("NLPERIM_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Evaluates fn(i) for i in [0, n) in parallel, then reduces the per-row
// partials in fixed index order with compensated summation.  The result is
// bit-identical for any thread count.
template <class RowFn>
double deterministic_row_sum(std::size_t n, RowFn&& fn) {
    const int nt = thread_count();
    std::vector<double> rows(n, 0.0);
    if (nt <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) rows[i] = fn(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (int t = 0; t < nt; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t i = t; i < n; i += nt) rows[i] = fn(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = rows[i] - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

} // namespace nlperim
