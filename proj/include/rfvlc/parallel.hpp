// SPDX-License-Identifier: Apache-2.0

#ifndef RFVLC_PARALLEL_HPP
#define RFVLC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rfvlc {

/// Calls `task(i)` for every i in [0, count) on up to `threads` workers.
/// Tasks must write to disjoint outputs; ordering of results is the
/// caller's business. The first exception thrown by a task is rethrown.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        task(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace rfvlc

#endif  // RFVLC_PARALLEL_HPP
