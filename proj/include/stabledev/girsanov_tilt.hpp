// Exponential tilting of the Levy measure that turns the shifted process into
// a martingale, plus the pieces of its log-density.
//
// The tilt multiplies the Levy measure by 1 + b(t) x / jump_cut on |x| < jump_cut,
// with b(t) = kappa * (2 - alpha)/2 * f'(t). Two regimes are supported:
//   middle shift: shift c r^{-(alpha-1)} f, kappa = c, jump_cut = r, jumps above r
//                 removed by conditioning, Levy scale 1, ball radius r;
//   small shift:  shift lambda f after rescaling time by rho, kappa =
//                 lambda rho^{-(alpha-1)/alpha}, jump_cut = 1, Levy scale rho,
//                 jumps above 1 kept untilted, ball radius r rho^{1/alpha}.
#pragma once

#include "stabledev/path_sim.hpp"
#include "stabledev/process_model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stabledev {

enum class TiltRegime { small_shift, middle_shift };

class TiltSpec {
public:
    static TiltSpec middle_shift(const AlphaStableParams& params, ShiftFunction f, double c, double r);
    /// rho defaults to r^{-alpha} (lambda r^{alpha-1})^{-1}.
    static TiltSpec small_shift(const AlphaStableParams& params, ShiftFunction f, double lambda, double r,
                                std::optional<double> rho = std::nullopt);

    const AlphaStableParams& params() const noexcept { return params_; }
    const ShiftFunction& shift() const noexcept { return f_; }
    TiltRegime regime() const noexcept { return regime_; }
    double lambda() const noexcept { return lambda_; }
    double rho() const noexcept { return rho_; }
    double c() const noexcept { return c_; }
    double r() const noexcept { return r_; }
    double kappa() const noexcept { return kappa_; }

    /// kappa * (2 - alpha) / 2.
    double amplitude() const noexcept { return amplitude_; }
    double jump_cut() const noexcept { return jump_cut_; }
    double levy_scale() const noexcept { return levy_scale_; }
    bool truncated_above_cut() const noexcept { return regime_ == TiltRegime::middle_shift; }
    double ball_radius() const noexcept { return ball_radius_; }
    /// Largest value of |b(t)|.
    double b_max() const noexcept { return amplitude_ * f_.sup_deriv(); }
    double b(double t) const { return amplitude_ * f_.slope_at(t); }

    /// Slope of the deterministic drift of the tilted path per unit of f, for jump
    /// sizes in (eps, jump_cut): the path carries -drift_per_shift(eps) * f(t).
    double drift_per_shift(double eps) const;

    std::map<std::string, std::string> to_config() const;
    static TiltSpec from_config(const std::map<std::string, std::string>& kv);

private:
    TiltSpec(AlphaStableParams params, ShiftFunction f) : params_(params), f_(std::move(f)) {}

    AlphaStableParams params_;
    ShiftFunction f_;
    TiltRegime regime_ = TiltRegime::middle_shift;
    double lambda_ = 0.0;
    double rho_ = 1.0;
    double c_ = 0.0;
    double r_ = 0.0;
    double kappa_ = 0.0;
    double amplitude_ = 0.0;
    double jump_cut_ = 1.0;
    double levy_scale_ = 1.0;
    double ball_radius_ = 0.0;
};

/// log(1 + b(t) x / jump_cut) for |x| < jump_cut, zero outside.
double theta(const TiltSpec& tilt, double x, double t);

struct Validity {
    bool pass = false;
    double margin = 0.0;
};

/// Passes iff kappa (2-alpha)/2 ||f'|| < 1; margin is 1 minus that value.
Validity validity_check(const TiltSpec& tilt);

/// levy_scale * int_0^1 int_{|x|<cut} Psi(b(t) x / cut) |x|^{-1-alpha} dx dt by the
/// even-power series, summed until the geometric tail bound is below 1e-12.
double deterministic_exponent(const TiltSpec& tilt);

/// The same quantity by direct two-dimensional quadrature.
double deterministic_exponent_quadrature(const TiltSpec& tilt);

/// Leading-order small-shift exponent (2-alpha)/4 lambda^2 rho^{(2-alpha)/alpha} int f'^2.
double small_shift_leading_exponent(const TiltSpec& tilt);

/// int_0^1 int_{eps<|x|<cut} (e^theta - 1) |x|^{-1-alpha} dx dt computed numerically
/// from the two half-lines. Zero by symmetry; used as a runtime check.
double compensator_integral(const TiltSpec& tilt, double eps);

/// log(dP_original / dP_tilted) evaluated on a jump-resolved sample of the tilted law.
/// Throws for increment-mode paths.
double log_weight(const TiltSpec& tilt, const SimPath& path);

/// Centered triplet of the tilted process: density levy_scale (1 + b(t)x/cut) |x|^{-1-alpha}
/// on |x| < cut (plus the untilted tail in the small-shift regime), zero drift.
CenteredTriplet tilted_triplet(const TiltSpec& tilt);

struct NamedTilt {
    std::string label;
    TiltSpec tilt;
};

/// Shifts 0, Id, tent and a random 8-knot f with ||f'|| <= 1 under middle shifts
/// (c in {0.2, 1}, r = 0.8) and small shifts (lambda = 1, r = 0.5, default rho).
std::vector<NamedTilt> default_tilt_battery(const AlphaStableParams& params);

} // namespace stabledev
