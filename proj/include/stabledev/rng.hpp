// Seeded random streams. One stream per (seed, stream_id); simulation code
// assigns stream_id = path index so results never depend on scheduling.
#pragma once

#include <cstdint>
#include <random>

namespace stabledev {

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Uniform on the open interval (0,1).
    double uniform();
    double normal();
    /// Exp(1).
    double exponential();
    std::uint64_t poisson(double mean);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace stabledev
