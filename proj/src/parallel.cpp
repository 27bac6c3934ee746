#include "stabledev/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stabledev {

void SerialRunner::run(std::size_t n_tasks, const std::function<void(std::size_t)>& task) const {
    for (std::size_t i = 0; i < n_tasks; ++i) task(i);
}

ThreadPoolRunner::ThreadPoolRunner(std::size_t workers)
    : workers_(workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers) {}

void ThreadPoolRunner::run(std::size_t n_tasks, const std::function<void(std::size_t)>& task) const {
    const std::size_t n_threads = std::min(workers_, n_tasks);
    if (n_threads <= 1) {
        SerialRunner{}.run(n_tasks, task);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> threads;
        threads.reserve(n_threads);
        for (std::size_t w = 0; w < n_threads; ++w) {
            threads.emplace_back([&] {
                for (std::size_t i = next++; i < n_tasks; i = next++) {
                    try {
                        task(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = n_tasks;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

const BatchRunner& serial_runner() {
    static const SerialRunner runner;
    return runner;
}

void for_each_chunk(const BatchRunner& runner, std::size_t n, std::size_t chunk,
                    const std::function<void(std::size_t, std::size_t)>& body) {
    if (chunk == 0) chunk = 1;
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    runner.run(n_chunks, [&](std::size_t c) {
        const std::size_t begin = c * chunk;
        body(begin, std::min(n, begin + chunk));
    });
}

} // namespace stabledev
