#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lodisq {

// --threads flag wins; LODISQ_THREADS is the fallback, then hardware concurrency.
inline unsigned default_threads() {
    if (const char* env = std::getenv("LODISQ_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static chunking: worker t handles [t*n/T, (t+1)*n/T). f(begin, end) per chunk.
template <class F>
void parallel_chunks(std::size_t n, unsigned threads, F&& f) {
    if (threads <= 1 || n < 2) {
        f(std::size_t{0}, n);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = n * t / threads;
        std::size_t hi = n * (t + 1) / threads;
        pool.emplace_back([lo, hi, &f] { f(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// max over f(i), combined chunk-by-chunk in index order (deterministic)
template <class F>
double parallel_max(std::size_t n, unsigned threads, F&& f, double init) {
    if (threads <= 1 || n < 2) {
        double m = init;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, f(i));
        return m;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<double> partial(threads, init);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = n * t / threads;
        std::size_t hi = n * (t + 1) / threads;
        pool.emplace_back([lo, hi, t, &partial, &f] {
            double m = partial[t];
            for (std::size_t i = lo; i < hi; ++i) m = std::max(m, f(i));
            partial[t] = m;
        });
    }
    for (auto& th : pool) th.join();
    double m = init;
    for (double v : partial) m = std::max(m, v);
    return m;
}

}  // namespace lodisq
