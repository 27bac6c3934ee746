// Seeded path simulation for symmetric alpha-stable processes on [0,1].
//
// Two representations are produced:
//   * increment mode: i.i.d. stable increments on a uniform grid;
//   * jump-resolved mode: jumps with |size| > eps_cutoff are simulated exactly
//     from their Poisson measure and recorded, jumps below the cutoff are
//     replaced by a Brownian proxy with the same variance.
// In jump-resolved mode the continuous part is taken to be linear between grid
// points, so the recorded (times, values, jumps) fully determine the path.
#pragma once

#include "stabledev/parallel.hpp"
#include "stabledev/process_model.hpp"
#include "stabledev/rng.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stabledev {

class TiltSpec;

enum class PathMode { increment, jump_resolved };

struct Jump {
    double time;
    double size;
};

struct SimPath {
    std::vector<double> times;  ///< uniform grid 0 = t_0 < ... < t_N = 1
    std::vector<double> values; ///< X(t_i), values[0] == 0
    std::vector<Jump> jumps;    ///< sorted by time, |size| > eps_cutoff
    double eps_cutoff = 0.0;
    /// Per-unit-time variance of the Gaussian small-jump proxy (0 when dropped).
    double small_jump_variance = 0.0;
    PathMode mode = PathMode::increment;

    std::size_t n_steps() const noexcept { return times.empty() ? 0 : times.size() - 1; }
    /// Right-continuous value X(t) under the piecewise-linear-plus-jumps representation.
    double value_at(double t) const;
    double max_abs_jump() const;
};

struct TiltedSample {
    SimPath path;
    double log_weight = 0.0;
};

struct TimeChangedPath {
    SimPath path;                        ///< eta(t_i) on the uniform grid
    std::vector<double> operational_times; ///< phi(t_i) = int_0^{t_i} mu / int_0^1 mu
    double total_mass = 0.0;             ///< int_0^1 mu
};

/// Standard symmetric stable variate with characteristic function exp(-|u|^alpha)
/// (Chambers-Mallows-Stuck transform of a uniform angle and an exponential).
double standard_stable_variate(double alpha, RngStream& rng);

SimPath sample_stable_path(const AlphaStableParams& params, std::size_t n_steps, RngStream& rng);

/// Untruncated jump-resolved path. Small jumps are either dropped (their mean is
/// zero by symmetry, so no compensation drift is needed) or replaced by a
/// Brownian motion with variance 2 eps^{2-alpha}/(2-alpha) per unit time.
SimPath sample_jump_path(const AlphaStableParams& params, double eps_cutoff, bool gaussian_refinement,
                         std::size_t n_steps, RngStream& rng);

/// Process with Levy density 1{|x| < r} |x|^{-1-alpha}. eps defaults to r/50;
/// eps == r leaves only the Gaussian proxy.
SimPath sample_truncated_path(const AlphaStableParams& params, double r, std::size_t n_steps, RngStream& rng,
                              std::optional<double> eps_cutoff = std::nullopt);

/// Samples the tilted (martingale) law by thinning a dominating homogeneous
/// Poisson measure and returns log(dP_original / dP_tilted) on the sample.
/// eps defaults to jump_cut/50.
TiltedSample sample_tilted_path(const TiltSpec& tilt, std::size_t n_steps, RngStream& rng,
                                std::optional<double> eps_cutoff = std::nullopt);

/// Additive process with Levy measure mu(t) dt |x|^{-1-alpha} dx sampled through
/// independent increments with scale (c_alpha * int_{t_i}^{t_{i+1}} mu)^{1/alpha}.
TimeChangedPath time_change_sample(const std::function<double(double)>& mu, const AlphaStableParams& base,
                                   std::size_t n_steps, RngStream& rng);

/// max |X(t) - lambda f(t)| over grid points and both sides of every recorded jump.
double sup_distance(const SimPath& path, const ShiftFunction& f, double lambda);

/// Sup-norms of n_paths increment-mode paths; path i uses RngStream(seed, i).
std::vector<double> sample_sup_norms(const AlphaStableParams& params, std::size_t n_paths, std::size_t n_steps,
                                     std::uint64_t seed, const BatchRunner& runner);

/// CSV with header `t,x`.
std::string path_to_csv(const SimPath& path);
/// CSV with header `t,size`.
std::string jumps_to_csv(const SimPath& path);

} // namespace stabledev
