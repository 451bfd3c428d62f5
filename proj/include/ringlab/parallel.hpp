#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ringlab {

// Runs body(begin, end) on `jobs` contiguous slices of [0, n). The first exception
// thrown by any worker is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t n, unsigned jobs, Body&& body) {
    jobs = std::max(1U, jobs);
    if (jobs == 1 || n < 2) {
        body(std::size_t{0}, n);
        return;
    }
    const std::size_t chunk = (n + jobs - 1) / jobs;
    std::exception_ptr failure;
    std::mutex guard;
    std::vector<std::thread> workers;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        const std::size_t end = std::min(n, begin + chunk);
        workers.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard lock(guard);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace ringlab
