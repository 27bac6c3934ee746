// Domain types shared across the library.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stabledev {

/// Symmetric alpha-stable process with Levy measure |x|^{-1-alpha} dx.
///
/// The characteristic exponent is c_alpha |u|^alpha; c_alpha is fixed by the
/// Levy-measure normalization and computed once on construction.
class AlphaStableParams {
public:
    /// Throws std::invalid_argument unless 1 < alpha < 2.
    static AlphaStableParams make(double alpha);

    double alpha() const noexcept { return alpha_; }
    double c_alpha() const noexcept { return c_alpha_; }

    /// Mass of the Levy measure outside [-x, x]: (2/alpha) x^{-alpha}.
    double tail_mass(double x) const;
    /// Second moment of the Levy measure on [-x, x]: 2 x^{2-alpha} / (2-alpha).
    double small_jump_variance(double x) const;

private:
    AlphaStableParams(double alpha, double c_alpha) : alpha_(alpha), c_alpha_(c_alpha) {}
    double alpha_;
    double c_alpha_;
};

/// Centered triplet (sigma^2, l(x,t) dx dt, gamma(t)) of an additive process with
/// finite expectation. sigma^2 is always zero for the processes used here.
struct CenteredTriplet {
    double sigma2 = 0.0;
    std::function<double(double x, double t)> levy_density;
    std::function<double(double t)> gamma;
    /// |x| where the density may jump; quadrature splits there.
    std::vector<double> breakpoints;

    /// Numerically integrates min(1, x^2) l(x, t) over the real line.
    double min1x2_mass(double t) const;
};

/// Stable triplet (0, |x|^{-1-alpha} dx, 0).
CenteredTriplet stable_triplet(const AlphaStableParams& params);
/// Triplet with the Levy density restricted to |x| < r, zero drift.
CenteredTriplet truncated_triplet(const AlphaStableParams& params, double r);

struct Knot {
    double t;
    double value;
};

/// Continuous piecewise-linear f on [0,1] with f(0) = 0.
///
/// Piecewise-linear representatives give exact derivatives and exact moment
/// integrals, so the series constants and tilts carry no quadrature error.
class ShiftFunction {
public:
    /// Knots run from (0,0) to t = 1 with strictly increasing times.
    static ShiftFunction make(std::vector<Knot> knots);

    static ShiftFunction zero();
    static ShiftFunction identity();
    /// 0 -> 1 at t = 1/2 -> 0.
    static ShiftFunction tent();
    /// Random continuous shift with `n_knots` interior knots and |f'| <= max_slope.
    static ShiftFunction random_piecewise(std::size_t n_knots, double max_slope, std::uint64_t seed);

    /// Parses a JSON array of [t, value] pairs.
    static ShiftFunction from_json(const std::string& text);
    std::string to_json() const;

    /// Throws std::out_of_range for t outside [0,1].
    double operator()(double t) const;
    /// Right derivative on [0,1), left derivative at t = 1.
    double slope_at(double t) const;

    const std::vector<Knot>& knots() const noexcept { return knots_; }
    const std::vector<double>& slopes() const noexcept { return slopes_; }
    double sup_deriv() const noexcept { return sup_deriv_; }
    double l2_deriv() const noexcept { return l2_deriv_; }
    double sup_abs() const noexcept { return sup_abs_; }
    double end_value() const noexcept { return knots_.back().value; }

    /// Sum over segments of (scale * slope)^{2k} * dt, exact.
    double even_moment(int k, double scale = 1.0) const;

private:
    explicit ShiftFunction(std::vector<Knot> knots);
    std::size_t segment(double t) const;

    std::vector<Knot> knots_;
    std::vector<double> slopes_;
    double sup_deriv_ = 0.0;
    double l2_deriv_ = 0.0;
    double sup_abs_ = 0.0;
};

/// Scaling function h(T), always evaluated through u = log T so that
/// astronomically large T never has to be materialized.
struct ScalingFunction {
    enum class Kind { power_loglog, custom };

    Kind kind = Kind::power_loglog;
    /// h(T) = (log T)^log_power * (log log T)^loglog_power.
    double log_power = 0.0;
    double loglog_power = 0.0;
    std::function<double(double log_t)> custom;
    std::string label;

    static ScalingFunction power_loglog(double log_power, double loglog_power);
    /// h(T) = (log log T)^{delta - 1/alpha}.
    static ScalingFunction lil_family(double delta, double alpha);
    static ScalingFunction make_custom(std::function<double(double log_t)> h, std::string label);

    double value_at_log(double log_t) const;
};

enum class IntervalKind { normal, clopper_pearson };

/// Monte Carlo result. `ci_lo <= value <= ci_hi` always holds.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    IntervalKind interval = IntervalKind::normal;

    /// Bernoulli proportion. Small counts switch to the exact Clopper-Pearson interval.
    static Estimate from_bernoulli(std::size_t hits, std::size_t n);
    /// Mean of n samples given their sum and sum of squares; probability estimates
    /// get their interval clipped to [0,1].
    static Estimate from_moments(double sum, double sum_sq, std::size_t n, bool probability);

    Estimate scaled(double factor) const;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace stabledev
