#ifndef DIRICHLET_PARALLEL_HPP
#define DIRICHLET_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dirichlet {

/// Resolves a requested worker count; 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested)
{
    if (requested != 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/*
 * Calls body(i) for i in [0, n) over contiguous chunks on up to `threads`
 * workers. Each index is handled by exactly one worker, so per-index results
 * do not depend on the worker count. The first exception is rethrown.
 */
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body)
{
    const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i)
                    body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    pool.clear();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace dirichlet

#endif
