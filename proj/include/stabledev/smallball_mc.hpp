// Shifted small-ball probabilities P{||X - lambda f|| < r}. The importance
// sampler truncates big jumps, then tilts.
#pragma once

#include "stabledev/girsanov_tilt.hpp"
#include "stabledev/parallel.hpp"
#include "stabledev/process_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stabledev {

enum class ShiftRegime { small, middle, large };

struct SmallBallQuery {
    AlphaStableParams params;
    ShiftFunction f;
    /// lambda; equals c r^{-(alpha-1)} in the middle regime.
    double shift_scale = 0.0;
    double r = 1.0;
    ShiftRegime regime = ShiftRegime::small;
    /// shift_scale * r^{alpha-1}; always recorded.
    double c = 0.0;

    static SmallBallQuery make(const AlphaStableParams& params, ShiftFunction f, double lambda, double r,
                               ShiftRegime regime);
    /// Middle regime: shift c r^{-(alpha-1)} f.
    static SmallBallQuery middle(const AlphaStableParams& params, ShiftFunction f, double c, double r);
    /// Unshifted ball.
    static SmallBallQuery centered(const AlphaStableParams& params, double r);
};

std::string to_string(ShiftRegime r);
ShiftRegime parse_regime(const std::string& s);

struct SmallBallResult {
    Estimate estimate;
    /// Effective sample size (Sum w)^2 / Sum w^2; equals the hit count for crude MC.
    double ess = 0.0;
    std::size_t hits = 0;
    /// Non-empty when the run could not resolve the probability.
    std::string flag;
};

SmallBallResult estimate_crude(const SmallBallQuery& q, std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                               const BatchRunner& runner);

/// exp(-(2/alpha) r^{-alpha}), the probability of no jump larger than r on [0,1].
double prob_no_big_jumps(double alpha, double r);

/// Fraction of jump-resolved paths whose largest jump is at most r.
Estimate no_big_jump_fraction(const AlphaStableParams& params, double r, std::size_t n_paths, std::uint64_t seed,
                              const BatchRunner& runner);

/// P{||xi - lambda f|| < r} for the process with jumps truncated at r, i.e. the
/// conditional probability given no jump larger than r.
SmallBallResult estimate_truncated(const SmallBallQuery& q, std::size_t n_paths, std::size_t n_steps,
                                   std::uint64_t seed, const BatchRunner& runner,
                                   std::optional<double> eps_cutoff = std::nullopt);

/// Importance-sampling estimate for the middle regime. Conditions on the
/// no-big-jump event, samples the tilted martingale and weights the indicator of
/// the centered ball. Throws on invalid tilts or a failed compensator check.
SmallBallResult estimate_is(const SmallBallQuery& q, std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                            const BatchRunner& runner, std::optional<double> eps_cutoff = std::nullopt);

/// exp(-C(alpha) / r^alpha). Refused (throws) outside the middle regime or when
/// ||f'|| >= 2 / ((2 - alpha) c).
double theory_lower_bound_middle(const SmallBallQuery& q);

struct TailReport {
    std::vector<double> x;
    std::vector<Estimate> p_hat;
    double slope = 0.0;
    double slope_se = 0.0;
    double slope_ci_lo = 0.0;
    double slope_ci_hi = 0.0;
    /// max/min of p_hat(x) x^alpha over the resolved points.
    double scaled_ratio = 0.0;
    bool monotone = true;
};

TailReport tail_prob_check(const AlphaStableParams& params, const std::vector<double>& x_list, std::size_t n_paths,
                           std::size_t n_steps, std::uint64_t seed, const BatchRunner& runner);
TailReport tail_report_from_norms(double alpha, const std::vector<double>& x_list, const std::vector<double>& sup_norms);

struct AndersonEntry {
    std::string label;
    ShiftFunction f;
    double lambda = 0.0;
};

struct AndersonRow {
    std::string label;
    double lambda = 0.0;
    Estimate estimate;
    bool flagged = false;
};

struct AndersonReport {
    Estimate baseline;
    std::vector<AndersonRow> rows;
    std::size_t flags = 0;
};

/// Shifts 0, Id x 0.5, tent x 0.5, Id x {1, 1.5, 2} and a random 8-knot shift.
std::vector<AndersonEntry> default_anderson_battery();

/// Common random numbers: every entry is evaluated on the same paths. A row is
/// flagged when p(f, lambda) > p(0) + 3 sqrt(se_f^2 + se_0^2).
AndersonReport anderson_report(const std::vector<AndersonEntry>& battery, const AlphaStableParams& params, double r,
                               std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                               const BatchRunner& runner);

} // namespace stabledev
