#include "stabledev/path_sim.hpp"

#include "stabledev/girsanov_tilt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace stabledev {

namespace {

std::vector<double> uniform_grid(std::size_t n_steps) {
    std::vector<double> t(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n_steps);
    t[n_steps] = 1.0;
    return t;
}

void require_steps(std::size_t n_steps) {
    if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
}

// Everything the jump-resolved samplers share. Region A holds the jumps with
// eps < |x| < cut, optionally tilted by 1 + b(t) x / cut and sampled by
// thinning; region B holds untilted jumps above cut when they are kept.
struct JumpSampler {
    double alpha = 1.5;
    double levy_scale = 1.0;
    double eps = 0.0;
    double cut = std::numeric_limits<double>::infinity();
    bool keep_above_cut = false;
    bool gaussian = true;
    const TiltSpec* tilt = nullptr;

    SimPath sample(std::size_t n_steps, RngStream& rng) const;
};

SimPath JumpSampler::sample(std::size_t n_steps, RngStream& rng) const {
    require_steps(n_steps);
    SimPath path;
    path.mode = PathMode::jump_resolved;
    path.eps_cutoff = eps;
    path.times = uniform_grid(n_steps);
    path.values.assign(n_steps + 1, 0.0);

    const bool finite_cut = std::isfinite(cut);
    const double b_max = tilt ? tilt->b_max() : 0.0;
    const double eps_pow = std::pow(eps, -alpha);
    const double cut_pow = finite_cut ? std::pow(cut, -alpha) : 0.0;
    const double ratio_pow = finite_cut ? std::pow(eps / cut, alpha) : 0.0;

    if (eps < cut) {
        const double mass = levy_scale * (2.0 / alpha) * (eps_pow - cut_pow) * (1.0 + b_max);
        const std::uint64_t n_jumps = rng.poisson(mass);
        path.jumps.reserve(n_jumps);
        for (std::uint64_t j = 0; j < n_jumps; ++j) {
            const double t = rng.uniform();
            const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            const double size = sign * eps * std::pow(1.0 - rng.uniform() * (1.0 - ratio_pow), -1.0 / alpha);
            const double accept = rng.uniform() * (1.0 + b_max);
            const double density = tilt ? 1.0 + tilt->b(t) * size / cut : 1.0;
            if (accept <= density) path.jumps.push_back({t, size});
        }
    }
    if (keep_above_cut && finite_cut) {
        const std::uint64_t n_big = rng.poisson(levy_scale * (2.0 / alpha) * cut_pow);
        for (std::uint64_t j = 0; j < n_big; ++j) {
            const double t = rng.uniform();
            const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            path.jumps.push_back({t, sign * cut * std::pow(rng.uniform(), -1.0 / alpha)});
        }
    }
    std::sort(path.jumps.begin(), path.jumps.end(), [](const Jump& a, const Jump& b) { return a.time < b.time; });

    path.small_jump_variance = gaussian ? levy_scale * 2.0 * std::pow(eps, 2.0 - alpha) / (2.0 - alpha) : 0.0;
    const double drift_slope = tilt ? -tilt->drift_per_shift(eps) : 0.0;
    const double dt = 1.0 / static_cast<double>(n_steps);
    const double step_sd = std::sqrt(path.small_jump_variance * dt);

    std::size_t j = 0;
    double f_prev = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        double inc = gaussian ? step_sd * rng.normal() : 0.0;
        if (tilt) {
            const double f_next = tilt->shift()(path.times[i + 1]);
            inc += drift_slope * (f_next - f_prev);
            f_prev = f_next;
        }
        while (j < path.jumps.size() && path.jumps[j].time <= path.times[i + 1]) inc += path.jumps[j++].size;
        path.values[i + 1] = path.values[i] + inc;
    }
    return path;
}

// Index of the first jump in the step (t_i, t_{i+1}] and the sum of jump sizes in it.
struct StepJumps {
    std::size_t first = 0;
    std::size_t last = 0;
    double total = 0.0;
};

StepJumps collect_step(const SimPath& path, std::size_t i, std::size_t& cursor) {
    StepJumps s;
    s.first = cursor;
    while (cursor < path.jumps.size() && path.jumps[cursor].time <= path.times[i + 1]) s.total += path.jumps[cursor++].size;
    s.last = cursor;
    return s;
}

} // namespace

double SimPath::value_at(double t) const {
    if (!(t >= 0.0 && t <= 1.0) || times.empty()) throw std::out_of_range("SimPath::value_at: t outside [0,1]");
    const std::size_t n = n_steps();
    std::size_t i = std::min(n - 1, static_cast<std::size_t>(t * static_cast<double>(n)));
    while (i > 0 && times[i] > t) --i;
    while (i + 1 < n && times[i + 1] <= t) ++i;
    if (t == times[i + 1]) return values[i + 1];
    double in_step = 0.0;
    double before = 0.0;
    for (const auto& jmp : jumps) {
        if (jmp.time > times[i] && jmp.time <= times[i + 1]) {
            in_step += jmp.size;
            if (jmp.time <= t) before += jmp.size;
        }
    }
    const double slope = (values[i + 1] - values[i] - in_step) / (times[i + 1] - times[i]);
    return values[i] + slope * (t - times[i]) + before;
}

double SimPath::max_abs_jump() const {
    double m = 0.0;
    for (const auto& j : jumps) m = std::max(m, std::abs(j.size));
    return m;
}

double standard_stable_variate(double alpha, RngStream& rng) {
    const double v = std::numbers::pi * (rng.uniform() - 0.5);
    const double w = rng.exponential();
    const double cv = std::cos(v);
    return std::sin(alpha * v) / std::pow(cv, 1.0 / alpha) *
           std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
}

SimPath sample_stable_path(const AlphaStableParams& params, std::size_t n_steps, RngStream& rng) {
    require_steps(n_steps);
    SimPath path;
    path.mode = PathMode::increment;
    path.times = uniform_grid(n_steps);
    path.values.assign(n_steps + 1, 0.0);
    const double alpha = params.alpha();
    const double scale = std::pow(params.c_alpha() / static_cast<double>(n_steps), 1.0 / alpha);
    for (std::size_t i = 0; i < n_steps; ++i) {
        path.values[i + 1] = path.values[i] + scale * standard_stable_variate(alpha, rng);
    }
    return path;
}

SimPath sample_jump_path(const AlphaStableParams& params, double eps_cutoff, bool gaussian_refinement,
                         std::size_t n_steps, RngStream& rng) {
    if (!(eps_cutoff > 0.0)) throw std::invalid_argument("eps_cutoff must be positive");
    JumpSampler s;
    s.alpha = params.alpha();
    s.eps = eps_cutoff;
    s.gaussian = gaussian_refinement;
    return s.sample(n_steps, rng);
}

SimPath sample_truncated_path(const AlphaStableParams& params, double r, std::size_t n_steps, RngStream& rng,
                              std::optional<double> eps_cutoff) {
    if (!(r > 0.0)) throw std::invalid_argument("truncation radius r must be positive");
    const double eps = eps_cutoff.value_or(r / 50.0);
    if (!(eps > 0.0) || eps > r) throw std::invalid_argument("eps_cutoff must lie in (0, r]");
    JumpSampler s;
    s.alpha = params.alpha();
    s.eps = eps;
    s.cut = r;
    return s.sample(n_steps, rng);
}

TiltedSample sample_tilted_path(const TiltSpec& tilt, std::size_t n_steps, RngStream& rng,
                                std::optional<double> eps_cutoff) {
    const Validity v = validity_check(tilt);
    if (!v.pass) throw std::invalid_argument("tilt violates the validity condition (margin " + std::to_string(v.margin) + ")");
    const double eps = eps_cutoff.value_or(tilt.jump_cut() / 50.0);
    if (!(eps > 0.0) || eps > tilt.jump_cut()) throw std::invalid_argument("eps_cutoff must lie in (0, jump_cut]");
    const double accept_floor = (1.0 - tilt.b_max()) / (1.0 + tilt.b_max());
    if (!(accept_floor > 0.0 && accept_floor <= 1.0)) throw std::invalid_argument("thinning acceptance outside (0,1]");

    JumpSampler s;
    s.alpha = tilt.params().alpha();
    s.levy_scale = tilt.levy_scale();
    s.eps = eps;
    s.cut = tilt.jump_cut();
    s.keep_above_cut = !tilt.truncated_above_cut();
    s.tilt = &tilt;
    TiltedSample out;
    out.path = s.sample(n_steps, rng);
    out.log_weight = log_weight(tilt, out.path);
    return out;
}

TimeChangedPath time_change_sample(const std::function<double(double)>& mu, const AlphaStableParams& base,
                                   std::size_t n_steps, RngStream& rng) {
    require_steps(n_steps);
    using Rule = boost::math::quadrature::gauss<double, 7>;
    TimeChangedPath out;
    out.path.mode = PathMode::increment;
    out.path.times = uniform_grid(n_steps);
    out.path.values.assign(n_steps + 1, 0.0);

    std::vector<double> mass(n_steps);
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double a = out.path.times[i];
        const double b = out.path.times[i + 1];
        auto checked = [&](double t) {
            const double m = mu(t);
            if (!(m >= 0.0)) throw std::invalid_argument("time-change density must be nonnegative");
            return m;
        };
        checked(a);
        checked(b);
        mass[i] = Rule::integrate(checked, a, b);
        out.total_mass += mass[i];
    }
    if (!(out.total_mass > 0.0)) throw std::invalid_argument("time-change density must have positive integral");

    const double alpha = base.alpha();
    out.operational_times.assign(n_steps + 1, 0.0);
    double cum = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double scale = std::pow(base.c_alpha() * mass[i], 1.0 / alpha);
        out.path.values[i + 1] = out.path.values[i] + scale * standard_stable_variate(alpha, rng);
        cum += mass[i];
        out.operational_times[i + 1] = cum / out.total_mass;
    }
    out.operational_times[n_steps] = 1.0;
    return out;
}

double sup_distance(const SimPath& path, const ShiftFunction& f, double lambda) {
    if (path.times.size() < 2 || path.times.front() != 0.0 || path.times.back() != 1.0) {
        throw std::invalid_argument("sup_distance needs a path on [0,1]");
    }
    auto shift = [&](double t) { return lambda == 0.0 ? 0.0 : lambda * f(t); };
    double sup = std::abs(path.values[0] - shift(0.0));
    std::size_t cursor = 0;
    for (std::size_t i = 0; i + 1 < path.times.size(); ++i) {
        sup = std::max(sup, std::abs(path.values[i + 1] - shift(path.times[i + 1])));
        if (cursor >= path.jumps.size()) continue;
        const StepJumps s = collect_step(path, i, cursor);
        if (s.first == s.last) continue;
        const double dt = path.times[i + 1] - path.times[i];
        const double slope = (path.values[i + 1] - path.values[i] - s.total) / dt;
        double jumped = 0.0;
        for (std::size_t j = s.first; j < s.last; ++j) {
            const double tau = path.jumps[j].time;
            const double pre = path.values[i] + slope * (tau - path.times[i]) + jumped;
            jumped += path.jumps[j].size;
            const double g = shift(tau);
            sup = std::max({sup, std::abs(pre - g), std::abs(pre + path.jumps[j].size - g)});
        }
    }
    return sup;
}

std::vector<double> sample_sup_norms(const AlphaStableParams& params, std::size_t n_paths, std::size_t n_steps,
                                     std::uint64_t seed, const BatchRunner& runner) {
    std::vector<double> out(n_paths);
    for_each_chunk(runner, n_paths, 256, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream rng(seed, i);
            const SimPath p = sample_stable_path(params, n_steps, rng);
            double m = 0.0;
            for (double v : p.values) m = std::max(m, std::abs(v));
            out[i] = m;
        }
    });
    return out;
}

std::string path_to_csv(const SimPath& path) {
    std::ostringstream os;
    os.precision(17);
    os << "t,x\n";
    for (std::size_t i = 0; i < path.times.size(); ++i) os << path.times[i] << ',' << path.values[i] << '\n';
    return os.str();
}

std::string jumps_to_csv(const SimPath& path) {
    std::ostringstream os;
    os.precision(17);
    os << "t,size\n";
    for (const auto& j : path.jumps) os << j.time << ',' << j.size << '\n';
    return os.str();
}

} // namespace stabledev
