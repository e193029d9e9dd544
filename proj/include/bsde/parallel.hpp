#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace bsde {

/// Number of workers used for grid-point loops. Controlled by the
/// BSDE_THREADS environment variable: unset or 0 means auto (hardware
/// concurrency), any positive value caps the pool at that size.
int worker_count();

/// Order-independent parallel map over [0, n). Each index is processed
/// exactly once; bodies must only write to disjoint state. Falls back to a
/// serial loop for small n or a single worker. The first exception thrown by
/// any worker is rethrown on the calling thread.
template <class F>
void parallel_for(std::size_t n, F&& body) {
    const int workers = worker_count();
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(workers, n);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run_chunk = [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    const std::size_t chunk = (n + nthreads - 1) / nthreads;
    for (std::size_t t = 1; t < nthreads; ++t) {
        const std::size_t begin = t * chunk;
        if (begin >= n) break;
        pool.emplace_back(run_chunk, begin, std::min(n, begin + chunk));
    }
    run_chunk(0, std::min(n, chunk));
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace bsde
