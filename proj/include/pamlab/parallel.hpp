#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pamlab {

// Worker count: PAMLAB_THREADS if set and positive, else the hardware concurrency.
int worker_count();

// Calls body(index) for index in [0, count). Each index is handled by exactly one
// worker; callers write results into per-index slots so output order is fixed.
// The exception of the lowest failing index is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body&& body, int workers = 0)
{
    if (workers <= 0) workers = worker_count();
    if (count == 0) return;
    const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (nw <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw - 1);
        for (std::size_t w = 1; w < nw; ++w) pool.emplace_back(run);
        run();
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace pamlab
