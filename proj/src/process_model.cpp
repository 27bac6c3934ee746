#include "stabledev/process_model.hpp"

#include "stabledev/constants.hpp"
#include "stabledev/rng.hpp"
#include "stabledev/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include "json.hpp"

namespace stabledev {

AlphaStableParams AlphaStableParams::make(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw std::invalid_argument("alpha must lie strictly inside (1,2), got " + std::to_string(alpha));
    }
    return AlphaStableParams(alpha, c_alpha_symbol(alpha));
}

double AlphaStableParams::tail_mass(double x) const {
    if (!(x > 0.0)) throw std::invalid_argument("tail_mass: x must be positive");
    return 2.0 / alpha_ * std::pow(x, -alpha_);
}

double AlphaStableParams::small_jump_variance(double x) const {
    if (!(x > 0.0)) throw std::invalid_argument("small_jump_variance: x must be positive");
    return 2.0 * std::pow(x, 2.0 - alpha_) / (2.0 - alpha_);
}

double CenteredTriplet::min1x2_mass(double t) const {
    using boost::math::quadrature::exp_sinh;
    using boost::math::quadrature::tanh_sinh;
    tanh_sinh<double> inner;
    exp_sinh<double> outer;
    double total = 0.0;
    for (double sign : {-1.0, 1.0}) {
        // tanh-sinh samples so close to 0 that x^2 underflows while the density overflows
        auto near = [&](double x) {
            const double v = x * x * levy_density(sign * x, t);
            return std::isfinite(v) ? v : 0.0;
        };
        auto far = [&](double x) { return levy_density(sign * x, t); };
        std::vector<double> cuts{0.0};
        for (double c : breakpoints)
            if (c > 0.0 && c < 1.0) cuts.push_back(c);
        std::sort(cuts.begin(), cuts.end());
        cuts.push_back(1.0);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += inner.integrate(near, cuts[i], cuts[i + 1]);
        double lo = 1.0;
        std::vector<double> far_cuts;
        for (double c : breakpoints)
            if (c > 1.0) far_cuts.push_back(c);
        std::sort(far_cuts.begin(), far_cuts.end());
        for (double c : far_cuts) {
            total += inner.integrate(far, lo, c);
            lo = c;
        }
        total += outer.integrate(far, lo, std::numeric_limits<double>::infinity());
    }
    return total;
}

CenteredTriplet stable_triplet(const AlphaStableParams& params) {
    const double a = params.alpha();
    CenteredTriplet tr;
    tr.levy_density = [a](double x, double) { return x == 0.0 ? 0.0 : std::pow(std::abs(x), -1.0 - a); };
    tr.gamma = [](double) { return 0.0; };
    return tr;
}

CenteredTriplet truncated_triplet(const AlphaStableParams& params, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("truncated_triplet: r must be positive");
    const double a = params.alpha();
    CenteredTriplet tr;
    tr.levy_density = [a, r](double x, double) {
        const double ax = std::abs(x);
        return (ax == 0.0 || ax >= r) ? 0.0 : std::pow(ax, -1.0 - a);
    };
    tr.breakpoints = {r};
    tr.gamma = [](double) { return 0.0; };
    return tr;
}

// ---------------------------------------------------------------------------
// ShiftFunction

ShiftFunction::ShiftFunction(std::vector<Knot> knots) : knots_(std::move(knots)) {
    slopes_.reserve(knots_.size() - 1);
    double l2 = 0.0;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const double dt = knots_[i + 1].t - knots_[i].t;
        const double s = (knots_[i + 1].value - knots_[i].value) / dt;
        slopes_.push_back(s);
        sup_deriv_ = std::max(sup_deriv_, std::abs(s));
        l2 += s * s * dt;
    }
    l2_deriv_ = std::sqrt(l2);
    for (const auto& k : knots_) sup_abs_ = std::max(sup_abs_, std::abs(k.value));
}

ShiftFunction ShiftFunction::make(std::vector<Knot> knots) {
    if (knots.size() < 2) throw std::invalid_argument("shift function needs at least two knots");
    if (knots.front().t != 0.0 || knots.front().value != 0.0) {
        throw std::invalid_argument("shift function must start at (0, 0)");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i].t > knots[i - 1].t)) throw std::invalid_argument("shift knot times must be strictly increasing");
        if (!std::isfinite(knots[i].value)) throw std::invalid_argument("shift knot values must be finite");
    }
    if (knots.back().t != 1.0) throw std::invalid_argument("last shift knot must be at t = 1");
    return ShiftFunction(std::move(knots));
}

ShiftFunction ShiftFunction::zero() { return make({{0.0, 0.0}, {1.0, 0.0}}); }
ShiftFunction ShiftFunction::identity() { return make({{0.0, 0.0}, {1.0, 1.0}}); }
ShiftFunction ShiftFunction::tent() { return make({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}}); }

ShiftFunction ShiftFunction::random_piecewise(std::size_t n_knots, double max_slope, std::uint64_t seed) {
    if (n_knots < 2) throw std::invalid_argument("random_piecewise: need at least two knots");
    RngStream rng(seed, 0);
    std::vector<Knot> knots{{0.0, 0.0}};
    const std::size_t segments = n_knots - 1;
    for (std::size_t i = 1; i <= segments; ++i) {
        const double t = (i == segments) ? 1.0 : static_cast<double>(i) / static_cast<double>(segments);
        const double slope = max_slope * (2.0 * rng.uniform() - 1.0);
        knots.push_back({t, knots.back().value + slope * (t - knots.back().t)});
    }
    return make(std::move(knots));
}

ShiftFunction ShiftFunction::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("shift JSON: ") + e.what());
    }
    if (!j.is_array()) throw std::invalid_argument("shift JSON must be an array of [t, value] pairs");
    std::vector<Knot> knots;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
            throw std::invalid_argument("shift JSON entries must be [t, value] number pairs");
        }
        knots.push_back({item[0].get<double>(), item[1].get<double>()});
    }
    return make(std::move(knots));
}

std::string ShiftFunction::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& k : knots_) j.push_back({k.t, k.value});
    return j.dump();
}

std::size_t ShiftFunction::segment(double t) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t, [](double v, const Knot& k) { return v < k.t; });
    std::size_t idx = static_cast<std::size_t>(it - knots_.begin());
    idx = idx == 0 ? 0 : idx - 1;
    return std::min(idx, slopes_.size() - 1);
}

double ShiftFunction::operator()(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::out_of_range("shift function evaluated outside [0,1]");
    const std::size_t i = segment(t);
    if (t == knots_[i + 1].t) return knots_[i + 1].value;
    return knots_[i].value + slopes_[i] * (t - knots_[i].t);
}

double ShiftFunction::slope_at(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::out_of_range("shift derivative evaluated outside [0,1]");
    return slopes_[segment(t)];
}

double ShiftFunction::even_moment(int k, double scale) const {
    double m = 0.0;
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
        m += std::pow(scale * slopes_[i], 2 * k) * (knots_[i + 1].t - knots_[i].t);
    }
    return m;
}

// ---------------------------------------------------------------------------
// ScalingFunction

ScalingFunction ScalingFunction::power_loglog(double log_power, double loglog_power) {
    ScalingFunction h;
    h.kind = Kind::power_loglog;
    h.log_power = log_power;
    h.loglog_power = loglog_power;
    h.label = "(log T)^" + std::to_string(log_power) + " (log log T)^" + std::to_string(loglog_power);
    return h;
}

ScalingFunction ScalingFunction::lil_family(double delta, double alpha) {
    return power_loglog(0.0, delta - 1.0 / alpha);
}

ScalingFunction ScalingFunction::make_custom(std::function<double(double)> h, std::string label) {
    ScalingFunction s;
    s.kind = Kind::custom;
    s.custom = std::move(h);
    s.label = std::move(label);
    return s;
}

double ScalingFunction::value_at_log(double log_t) const {
    if (kind == Kind::custom) return custom(log_t);
    if (!(log_t > 1.0)) throw std::domain_error("power_loglog scaling needs log T > 1");
    return std::pow(log_t, log_power) * std::pow(std::log(log_t), loglog_power);
}

// ---------------------------------------------------------------------------
// Estimate

Estimate Estimate::from_bernoulli(std::size_t hits, std::size_t n) {
    if (n == 0) throw std::invalid_argument("Estimate::from_bernoulli: n must be positive");
    if (hits > n) throw std::invalid_argument("Estimate::from_bernoulli: hits exceed n");
    Estimate e;
    e.n = n;
    e.value = static_cast<double>(hits) / static_cast<double>(n);
    const double var = n > 1 ? e.value * (1.0 - e.value) * static_cast<double>(n) / static_cast<double>(n - 1) : 0.0;
    e.std_error = std::sqrt(var / static_cast<double>(n));
    const bool small = n < 30 || hits < 5 || n - hits < 5;
    if (small) {
        const auto [lo, hi] = clopper_pearson(hits, n, 0.95);
        e.ci_lo = lo;
        e.ci_hi = hi;
        e.interval = IntervalKind::clopper_pearson;
    } else {
        e.ci_lo = std::max(0.0, e.value - 1.96 * e.std_error);
        e.ci_hi = std::min(1.0, e.value + 1.96 * e.std_error);
    }
    return e;
}

Estimate Estimate::from_moments(double sum, double sum_sq, std::size_t n, bool probability) {
    if (n == 0) throw std::invalid_argument("Estimate::from_moments: n must be positive");
    Estimate e;
    e.n = n;
    const double nn = static_cast<double>(n);
    e.value = sum / nn;
    const double var = n > 1 ? std::max(0.0, (sum_sq - nn * e.value * e.value) / (nn - 1.0)) : 0.0;
    e.std_error = std::sqrt(var / nn);
    e.ci_lo = e.value - 1.96 * e.std_error;
    e.ci_hi = e.value + 1.96 * e.std_error;
    if (probability) {
        e.ci_lo = std::clamp(e.ci_lo, 0.0, 1.0);
        e.ci_hi = std::clamp(e.ci_hi, 0.0, 1.0);
        e.ci_lo = std::min(e.ci_lo, e.value);
        e.ci_hi = std::max(e.ci_hi, e.value);
    }
    return e;
}

Estimate Estimate::scaled(double factor) const {
    if (!(factor >= 0.0)) throw std::invalid_argument("Estimate::scaled: factor must be nonnegative");
    Estimate e = *this;
    e.value *= factor;
    e.std_error *= factor;
    e.ci_lo *= factor;
    e.ci_hi *= factor;
    return e;
}

} // namespace stabledev
