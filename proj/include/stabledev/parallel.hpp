// Batch execution. Callers own the runner; library
// estimators only hand it independent tasks.
#pragma once

#include <cstddef>
#include <functional>

namespace stabledev {

class BatchRunner {
public:
    virtual ~BatchRunner() = default;
    /// Calls task(i) exactly once for every i in [0, n_tasks).
    virtual void run(std::size_t n_tasks, const std::function<void(std::size_t)>& task) const = 0;
    virtual std::size_t workers() const noexcept = 0;
};

class SerialRunner final : public BatchRunner {
public:
    void run(std::size_t n_tasks, const std::function<void(std::size_t)>& task) const override;
    std::size_t workers() const noexcept override { return 1; }
};

class ThreadPoolRunner final : public BatchRunner {
public:
    /// workers == 0 selects std::thread::hardware_concurrency().
    explicit ThreadPoolRunner(std::size_t workers);
    void run(std::size_t n_tasks, const std::function<void(std::size_t)>& task) const override;
    std::size_t workers() const noexcept override { return workers_; }

private:
    std::size_t workers_;
};

const BatchRunner& serial_runner();

/// Splits [0, n) into fixed-size chunks and runs body(begin, end) per chunk.
/// Chunk boundaries depend only on n and chunk, never on the worker count.
void for_each_chunk(const BatchRunner& runner, std::size_t n, std::size_t chunk,
                    const std::function<void(std::size_t, std::size_t)>& body);

} // namespace stabledev
