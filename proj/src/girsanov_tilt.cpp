#include "stabledev/girsanov_tilt.hpp"

#include "stabledev/constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace stabledev {

TiltSpec TiltSpec::middle_shift(const AlphaStableParams& params, ShiftFunction f, double c, double r) {
    if (!(c > 0.0)) throw std::invalid_argument("middle shift: c must be positive");
    if (!(r > 0.0)) throw std::invalid_argument("middle shift: r must be positive");
    TiltSpec t(params, std::move(f));
    const double a = params.alpha();
    t.regime_ = TiltRegime::middle_shift;
    t.c_ = c;
    t.r_ = r;
    t.lambda_ = c * std::pow(r, 1.0 - a);
    t.rho_ = 1.0;
    t.kappa_ = c;
    t.amplitude_ = c * (2.0 - a) / 2.0;
    t.jump_cut_ = r;
    t.levy_scale_ = 1.0;
    t.ball_radius_ = r;
    return t;
}

TiltSpec TiltSpec::small_shift(const AlphaStableParams& params, ShiftFunction f, double lambda, double r,
                               std::optional<double> rho) {
    if (!(lambda > 0.0)) throw std::invalid_argument("small shift: lambda must be positive");
    if (!(r > 0.0)) throw std::invalid_argument("small shift: r must be positive");
    const double a = params.alpha();
    const double rho_value = rho.value_or(std::pow(r, -a) / (lambda * std::pow(r, a - 1.0)));
    if (!(rho_value > 0.0)) throw std::invalid_argument("small shift: rho must be positive");
    TiltSpec t(params, std::move(f));
    t.regime_ = TiltRegime::small_shift;
    t.lambda_ = lambda;
    t.r_ = r;
    t.rho_ = rho_value;
    t.c_ = lambda * std::pow(r, a - 1.0);
    t.kappa_ = lambda * std::pow(rho_value, -(a - 1.0) / a);
    t.amplitude_ = t.kappa_ * (2.0 - a) / 2.0;
    t.jump_cut_ = 1.0;
    t.levy_scale_ = rho_value;
    t.ball_radius_ = r * std::pow(rho_value, 1.0 / a);
    return t;
}

double TiltSpec::drift_per_shift(double eps) const {
    const double a = params_.alpha();
    const double window = std::pow(jump_cut_, 2.0 - a) - std::pow(eps, 2.0 - a);
    return levy_scale_ * amplitude_ * 2.0 * window / ((2.0 - a) * jump_cut_);
}

std::map<std::string, std::string> TiltSpec::to_config() const {
    std::map<std::string, std::string> kv;
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    kv["alpha"] = num(params_.alpha());
    kv["r"] = num(r_);
    kv["shift"] = f_.to_json();
    if (regime_ == TiltRegime::middle_shift) {
        kv["regime"] = "middle";
        kv["c"] = num(c_);
    } else {
        kv["regime"] = "small";
        kv["lambda"] = num(lambda_);
        kv["rho"] = num(rho_);
    }
    return kv;
}

TiltSpec TiltSpec::from_config(const std::map<std::string, std::string>& kv) {
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError("tilt config: missing key '" + key + "'");
        return it->second;
    };
    auto number = [&](const std::string& key) {
        const std::string& s = get(key);
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("tilt config: key '" + key + "' is not a number: " + s);
        }
    };
    const auto params = AlphaStableParams::make(number("alpha"));
    ShiftFunction f = ShiftFunction::from_json(get("shift"));
    const std::string& regime = get("regime");
    if (regime == "middle") return middle_shift(params, std::move(f), number("c"), number("r"));
    if (regime == "small") {
        std::optional<double> rho;
        if (kv.count("rho")) rho = number("rho");
        return small_shift(params, std::move(f), number("lambda"), number("r"), rho);
    }
    throw ConfigError("tilt config: key 'regime' must be 'middle' or 'small', got " + regime);
}

double theta(const TiltSpec& tilt, double x, double t) {
    if (!(std::abs(x) < tilt.jump_cut())) return 0.0;
    const double u = tilt.b(t) * x / tilt.jump_cut();
    if (!(u > -1.0)) throw std::domain_error("theta: log argument is not positive; the tilt is invalid");
    return std::log1p(u);
}

Validity validity_check(const TiltSpec& tilt) {
    const double load = tilt.amplitude() * tilt.shift().sup_deriv();
    return {load < 1.0, 1.0 - load};
}

double deterministic_exponent(const TiltSpec& tilt) {
    if (!validity_check(tilt).pass) throw std::invalid_argument("deterministic_exponent: invalid tilt");
    const double a = tilt.params().alpha();
    const double q = std::pow(tilt.b_max(), 2);
    if (q == 0.0) return 0.0;

    const auto& slopes = tilt.shift().slopes();
    const auto& knots = tilt.shift().knots();
    std::vector<double> sq(slopes.size());
    std::vector<double> power(slopes.size());
    for (std::size_t s = 0; s < slopes.size(); ++s) {
        sq[s] = std::pow(tilt.amplitude() * slopes[s], 2);
        power[s] = knots[s + 1].t - knots[s].t;
    }
    double sum = 0.0;
    for (int k = 1; k < 10'000'000; ++k) {
        double moment = 0.0;
        for (std::size_t s = 0; s < sq.size(); ++s) {
            power[s] *= sq[s];
            moment += power[s];
        }
        const double kk = 2.0 * k;
        const double term = moment / (kk * (kk - 1.0) * (kk - a));
        sum += term;
        if (term * q / (1.0 - q) <= 1e-12 * sum) break;
    }
    return tilt.levy_scale() * 2.0 * std::pow(tilt.jump_cut(), -a) * sum;
}

double deterministic_exponent_quadrature(const TiltSpec& tilt) {
    if (!validity_check(tilt).pass) throw std::invalid_argument("deterministic_exponent_quadrature: invalid tilt");
    const double a = tilt.params().alpha();
    // u = v^p turns int_0^1 (Psi(bu)+Psi(-bu)) u^{-1-alpha} du into
    // p int_0^1 (Psi(b v^p)+Psi(-b v^p)) / v^{2p} dv, whose integrand is bounded.
    const double p = 1.0 / (2.0 - a);
    const auto& slopes = tilt.shift().slopes();
    const auto& knots = tilt.shift().knots();
    double total = 0.0;
    for (std::size_t s = 0; s < slopes.size(); ++s) {
        const double b = tilt.amplitude() * slopes[s];
        if (b == 0.0) continue;
        auto integrand = [&](double v) {
            if (v == 0.0) return b * b;
            const double u = std::pow(v, p);
            return (psi(b * u) + psi(-b * u)) / (u * u);
        };
        const double inner =
            p * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 20, 1e-13);
        total += (knots[s + 1].t - knots[s].t) * inner;
    }
    return tilt.levy_scale() * std::pow(tilt.jump_cut(), -a) * total;
}

double small_shift_leading_exponent(const TiltSpec& tilt) {
    const double a = tilt.params().alpha();
    const double l2 = tilt.shift().l2_deriv();
    return (2.0 - a) / 4.0 * tilt.lambda() * tilt.lambda() * std::pow(tilt.rho(), (2.0 - a) / a) * l2 * l2;
}

double compensator_integral(const TiltSpec& tilt, double eps) {
    if (!(eps > 0.0 && eps < tilt.jump_cut())) throw std::invalid_argument("compensator_integral: eps must lie in (0, cut)");
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double a = tilt.params().alpha();
    const auto& knots = tilt.shift().knots();
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
        const double tm = 0.5 * (knots[s].t + knots[s + 1].t);
        double seg = 0.0;
        for (double sign : {1.0, -1.0}) {
            // log substitution x = e^y spreads the x^{-1-alpha} singularity evenly
            auto integrand = [&](double y) {
                const double x = sign * std::exp(y);
                return std::expm1(theta(tilt, x, tm)) * std::pow(std::abs(x), -a);
            };
            seg += GK::integrate(integrand, std::log(eps), std::log(tilt.jump_cut()), 15, 1e-12);
        }
        total += (knots[s + 1].t - knots[s].t) * seg;
    }
    return tilt.levy_scale() * total;
}

double log_weight(const TiltSpec& tilt, const SimPath& path) {
    if (path.mode != PathMode::jump_resolved) throw std::invalid_argument("log_weight needs a jump-resolved path");
    double lw = 0.0;
    for (const auto& j : path.jumps) lw -= theta(tilt, j.size, j.time);
    if (path.small_jump_variance <= 0.0 || tilt.b_max() == 0.0) return lw;

    // Brownian proxy for the jumps below eps: Gaussian likelihood ratio between the
    // original law (mean -mu_i) and the tilted law (mean 0) of each step's residual.
    const ShiftFunction& f = tilt.shift();
    const double drift = tilt.drift_per_shift(path.eps_cutoff);
    const double var = path.small_jump_variance;
    std::size_t cursor = 0;
    double f_prev = 0.0;
    for (std::size_t i = 0; i + 1 < path.times.size(); ++i) {
        const double dt = path.times[i + 1] - path.times[i];
        double jumped = 0.0;
        while (cursor < path.jumps.size() && path.jumps[cursor].time <= path.times[i + 1]) jumped += path.jumps[cursor++].size;
        const double f_next = f(path.times[i + 1]);
        const double df = f_next - f_prev;
        f_prev = f_next;
        const double residual = path.values[i + 1] - path.values[i] - jumped + drift * df;
        const double beta = tilt.amplitude() * df / tilt.jump_cut();
        lw -= beta * residual / dt + beta * beta * var / (2.0 * dt);
    }
    return lw;
}

CenteredTriplet tilted_triplet(const TiltSpec& tilt) {
    CenteredTriplet tr;
    const double a = tilt.params().alpha();
    tr.levy_density = [tilt, a](double x, double t) {
        const double ax = std::abs(x);
        if (ax == 0.0) return 0.0;
        const double base = tilt.levy_scale() * std::pow(ax, -1.0 - a);
        if (ax < tilt.jump_cut()) return base * (1.0 + tilt.b(t) * x / tilt.jump_cut());
        return tilt.truncated_above_cut() ? 0.0 : base;
    };
    tr.gamma = [](double) { return 0.0; };
    return tr;
}

std::vector<NamedTilt> default_tilt_battery(const AlphaStableParams& params) {
    const std::vector<std::pair<std::string, ShiftFunction>> shifts = {
        {"zero", ShiftFunction::zero()},
        {"id", ShiftFunction::identity()},
        {"tent", ShiftFunction::tent()},
        {"random8", ShiftFunction::random_piecewise(8, 1.0, 2024)},
    };
    std::vector<NamedTilt> out;
    for (const auto& [name, f] : shifts) {
        out.push_back({"middle c=0.2 r=0.8 " + name, TiltSpec::middle_shift(params, f, 0.2, 0.8)});
        out.push_back({"middle c=1 r=0.8 " + name, TiltSpec::middle_shift(params, f, 1.0, 0.8)});
        out.push_back({"small lambda=1 r=0.5 " + name, TiltSpec::small_shift(params, f, 1.0, 0.5)});
    }
    return out;
}

} // namespace stabledev
