#include "stabledev/smallball_mc.hpp"

#include "stabledev/constants.hpp"
#include "stabledev/path_sim.hpp"
#include "stabledev/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stabledev {

namespace {

constexpr std::size_t kChunk = 256;

void require_paths(std::size_t n_paths) {
    if (n_paths == 0) throw std::invalid_argument("n_paths must be positive");
}

SmallBallResult from_hits(const std::vector<char>& hit) {
    SmallBallResult res;
    res.hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), char{1}));
    res.estimate = Estimate::from_bernoulli(res.hits, hit.size());
    res.ess = static_cast<double>(res.hits);
    if (res.hits == 0) res.flag = "no hits: probability not resolvable at this n";
    return res;
}

} // namespace

SmallBallQuery SmallBallQuery::make(const AlphaStableParams& params, ShiftFunction f, double lambda, double r,
                                    ShiftRegime regime) {
    if (!(r > 0.0)) throw std::invalid_argument("small-ball radius r must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("shift scale must be nonnegative");
    const double c = lambda * std::pow(r, params.alpha() - 1.0);
    return SmallBallQuery{params, std::move(f), lambda, r, regime, c};
}

SmallBallQuery SmallBallQuery::middle(const AlphaStableParams& params, ShiftFunction f, double c, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("small-ball radius r must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("middle regime needs c > 0");
    SmallBallQuery q = make(params, std::move(f), c * std::pow(r, 1.0 - params.alpha()), r, ShiftRegime::middle);
    q.c = c;
    return q;
}

SmallBallQuery SmallBallQuery::centered(const AlphaStableParams& params, double r) {
    return make(params, ShiftFunction::zero(), 0.0, r, ShiftRegime::small);
}

std::string to_string(ShiftRegime r) {
    switch (r) {
    case ShiftRegime::small: return "small";
    case ShiftRegime::middle: return "middle";
    case ShiftRegime::large: return "large";
    }
    return "small";
}

ShiftRegime parse_regime(const std::string& s) {
    if (s == "small") return ShiftRegime::small;
    if (s == "middle") return ShiftRegime::middle;
    if (s == "large") return ShiftRegime::large;
    throw std::invalid_argument("regime must be small, middle or large, got '" + s + "'");
}

SmallBallResult estimate_crude(const SmallBallQuery& q, std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                               const BatchRunner& runner) {
    require_paths(n_paths);
    std::vector<char> hit(n_paths, 0);
    for_each_chunk(runner, n_paths, kChunk, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream rng(seed, i);
            const SimPath p = sample_stable_path(q.params, n_steps, rng);
            hit[i] = sup_distance(p, q.f, q.shift_scale) < q.r ? 1 : 0;
        }
    });
    return from_hits(hit);
}

double prob_no_big_jumps(double alpha, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("prob_no_big_jumps: r must be positive");
    return std::exp(-(2.0 / alpha) * std::pow(r, -alpha));
}

Estimate no_big_jump_fraction(const AlphaStableParams& params, double r, std::size_t n_paths, std::uint64_t seed,
                              const BatchRunner& runner) {
    require_paths(n_paths);
    if (!(r > 0.0)) throw std::invalid_argument("no_big_jump_fraction: r must be positive");
    std::vector<char> ok(n_paths, 0);
    for_each_chunk(runner, n_paths, kChunk, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream rng(seed, i);
            const SimPath p = sample_jump_path(params, r / 2.0, false, 16, rng);
            ok[i] = p.max_abs_jump() <= r ? 1 : 0;
        }
    });
    return Estimate::from_bernoulli(static_cast<std::size_t>(std::count(ok.begin(), ok.end(), char{1})), n_paths);
}

SmallBallResult estimate_truncated(const SmallBallQuery& q, std::size_t n_paths, std::size_t n_steps,
                                   std::uint64_t seed, const BatchRunner& runner, std::optional<double> eps_cutoff) {
    require_paths(n_paths);
    std::vector<char> hit(n_paths, 0);
    for_each_chunk(runner, n_paths, kChunk, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream rng(seed, i);
            const SimPath p = sample_truncated_path(q.params, q.r, n_steps, rng, eps_cutoff);
            hit[i] = sup_distance(p, q.f, q.shift_scale) < q.r ? 1 : 0;
        }
    });
    return from_hits(hit);
}

SmallBallResult estimate_is(const SmallBallQuery& q, std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                            const BatchRunner& runner, std::optional<double> eps_cutoff) {
    require_paths(n_paths);
    if (q.regime != ShiftRegime::middle) throw std::invalid_argument("estimate_is handles the middle regime only");
    const TiltSpec tilt = TiltSpec::middle_shift(q.params, q.f, q.c, q.r);
    const Validity v = validity_check(tilt);
    if (!v.pass) throw std::invalid_argument("estimate_is: tilt violates the validity condition");
    const double eps = eps_cutoff.value_or(q.r / 50.0);
    if (tilt.b_max() > 0.0) {
        const double comp = compensator_integral(tilt, eps);
        if (!(std::abs(comp) < 1e-8)) {
            throw std::runtime_error("estimate_is: compensator check failed, |C_comp| = " + std::to_string(std::abs(comp)));
        }
    }

    std::vector<double> weight(n_paths, 0.0);
    const ShiftFunction zero = ShiftFunction::zero();
    for_each_chunk(runner, n_paths, kChunk, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream rng(seed, i);
            const TiltedSample s = sample_tilted_path(tilt, n_steps, rng, eps);
            if (sup_distance(s.path, zero, 0.0) < q.r) weight[i] = std::exp(s.log_weight);
        }
    });
    double sum = 0.0, sum_sq = 0.0;
    std::size_t hits = 0;
    for (double w : weight) {
        sum += w;
        sum_sq += w * w;
        hits += w > 0.0 ? 1 : 0;
    }
    SmallBallResult res;
    res.hits = hits;
    res.ess = sum_sq > 0.0 ? sum * sum / sum_sq : 0.0;
    res.estimate = Estimate::from_moments(sum, sum_sq, n_paths, true).scaled(prob_no_big_jumps(q.params.alpha(), q.r));
    if (hits == 0) res.flag = "no hits: probability not resolvable at this n";
    else if (res.ess < 30.0) res.flag = "effective sample size below 30";
    return res;
}

double theory_lower_bound_middle(const SmallBallQuery& q) {
    if (q.regime != ShiftRegime::middle) throw std::invalid_argument("lower bound is only claimed in the middle regime");
    const double a = q.params.alpha();
    if (!(q.f.sup_deriv() < 2.0 / ((2.0 - a) * q.c))) {
        throw std::invalid_argument("lower bound refused: ||f'|| >= 2/((2-alpha) c)");
    }
    return std::exp(-series_C_alpha(a) * std::pow(q.r, -a));
}

TailReport tail_report_from_norms(double alpha, const std::vector<double>& x_list, const std::vector<double>& sup_norms) {
    if (sup_norms.empty()) throw std::invalid_argument("tail check: no samples");
    TailReport rep;
    const std::size_t n = sup_norms.size();
    std::vector<double> lx, ly, w;
    double lo = INFINITY, hi = 0.0;
    for (double x : x_list) {
        if (!(x > 0.0)) throw std::invalid_argument("tail check: x must be positive");
        const auto hits = static_cast<std::size_t>(
            std::count_if(sup_norms.begin(), sup_norms.end(), [x](double s) { return s > x; }));
        const Estimate e = Estimate::from_bernoulli(hits, n);
        if (!rep.p_hat.empty()) {
            const Estimate& prev = rep.p_hat.back();
            if (e.value > prev.value + 2.0 * std::hypot(e.std_error, prev.std_error)) rep.monotone = false;
        }
        rep.x.push_back(x);
        rep.p_hat.push_back(e);
        if (hits == 0 || hits == n) continue;
        const double p = e.value;
        lx.push_back(std::log(x));
        ly.push_back(std::log(p));
        w.push_back(static_cast<double>(n) * p / (1.0 - p));
        const double scaled = p * std::pow(x, alpha);
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
    }
    if (lx.size() < 2) throw std::runtime_error("tail check: fewer than two resolvable x values");
    const LinearFit fit = linear_fit(lx, ly, w);
    rep.slope = fit.slope;
    rep.slope_se = fit.slope_se;
    rep.slope_ci_lo = fit.slope - 1.96 * fit.slope_se;
    rep.slope_ci_hi = fit.slope + 1.96 * fit.slope_se;
    rep.scaled_ratio = hi / lo;
    return rep;
}

TailReport tail_prob_check(const AlphaStableParams& params, const std::vector<double>& x_list, std::size_t n_paths,
                           std::size_t n_steps, std::uint64_t seed, const BatchRunner& runner) {
    require_paths(n_paths);
    return tail_report_from_norms(params.alpha(), x_list, sample_sup_norms(params, n_paths, n_steps, seed, runner));
}

std::vector<AndersonEntry> default_anderson_battery() {
    const ShiftFunction id = ShiftFunction::identity();
    return {
        {"zero", ShiftFunction::zero(), 0.0},
        {"id x0.5", id, 0.5},
        {"tent x0.5", ShiftFunction::tent(), 0.5},
        {"id x1", id, 1.0},
        {"id x1.5", id, 1.5},
        {"id x2", id, 2.0},
        {"random8 x1", ShiftFunction::random_piecewise(8, 1.0, 2024), 1.0},
    };
}

AndersonReport anderson_report(const std::vector<AndersonEntry>& battery, const AlphaStableParams& params, double r,
                               std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                               const BatchRunner& runner) {
    require_paths(n_paths);
    if (!(r > 0.0)) throw std::invalid_argument("anderson_report: r must be positive");
    const std::size_t m = battery.size();
    // column 0 is the unshifted ball, then one column per battery entry
    std::vector<char> hit(n_paths * (m + 1), 0);
    const ShiftFunction zero = ShiftFunction::zero();
    for_each_chunk(runner, n_paths, kChunk, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream rng(seed, i);
            const SimPath p = sample_stable_path(params, n_steps, rng);
            char* row = &hit[i * (m + 1)];
            row[0] = sup_distance(p, zero, 0.0) < r;
            for (std::size_t j = 0; j < m; ++j) row[j + 1] = sup_distance(p, battery[j].f, battery[j].lambda) < r;
        }
    });
    auto column = [&](std::size_t j) {
        std::size_t c = 0;
        for (std::size_t i = 0; i < n_paths; ++i) c += static_cast<std::size_t>(hit[i * (m + 1) + j]);
        return Estimate::from_bernoulli(c, n_paths);
    };
    AndersonReport rep;
    rep.baseline = column(0);
    for (std::size_t j = 0; j < m; ++j) {
        AndersonRow row{battery[j].label, battery[j].lambda, column(j + 1), false};
        row.flagged = row.estimate.value >
                      rep.baseline.value + 3.0 * std::hypot(row.estimate.std_error, rep.baseline.std_error);
        rep.flags += row.flagged ? 1 : 0;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace stabledev
