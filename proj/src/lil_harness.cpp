#include "stabledev/lil_harness.hpp"

#include "stabledev/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace stabledev {

double grid_log_time(GridKind kind, long k, double gamma) {
    if (kind == GridKind::lower) {
        if (k < kLowerGridMinK) {
            throw std::invalid_argument("lower grid needs k >= " + std::to_string(kLowerGridMinK) + ", got " + std::to_string(k));
        }
        const double lk = std::log(static_cast<double>(k));
        return static_cast<double>(k) / (lk * lk * lk);
    }
    if (!(gamma > 1.0)) throw std::invalid_argument("upper grid needs gamma > 1");
    if (k < 1) throw std::invalid_argument("upper grid needs k >= 1");
    return std::pow(static_cast<double>(k), gamma);
}

std::vector<double> grid_log_times(const GridSpec& spec) {
    if (spec.k_max < spec.k_min) throw std::invalid_argument("grid: k_max must be at least k_min");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(spec.k_max - spec.k_min + 1));
    for (long k = spec.k_min; k <= spec.k_max; ++k) out.push_back(grid_log_time(spec.kind, k, spec.gamma));
    return out;
}

std::vector<double> grid_times(const GridSpec& spec) {
    std::vector<double> logs = grid_log_times(spec);
    for (double& v : logs) {
        if (v > 700.0) throw std::overflow_error("grid_times: log T_k exceeds 700; use grid_log_times");
        v = std::exp(v);
    }
    return logs;
}

Lemma2Ratios lemma2_ratios(long k, double delta, double alpha) {
    if (k < kRatioMinK) {
        throw std::invalid_argument("lemma2_ratios needs k >= " + std::to_string(kRatioMinK) + " so that log log T_k > 0");
    }
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("lemma2_ratios: alpha must lie in (1,2)");
    const double a0 = grid_log_time(GridKind::lower, k);
    const double a1 = grid_log_time(GridKind::lower, k + 1);
    const double ll0 = std::log(std::log(a0));
    const double ll1 = std::log(std::log(a1));
    const double da = a0 - a1;
    const double inv = 1.0 / alpha;

    Lemma2Ratios out;
    out.r3 = std::exp(da);
    const double d1 = da * inv + (delta - inv) * (ll0 - ll1);
    out.r1 = std::exp(delta * ll1) * -std::expm1(d1);
    out.r2 = std::sqrt(-std::expm1(da)) * std::exp(da * inv + (delta - inv) * ll0 + inv * ll1);
    return out;
}

std::string to_string(IntegralClass c) {
    switch (c) {
    case IntegralClass::converges: return "converges";
    case IntegralClass::diverges: return "diverges";
    case IntegralClass::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

IntegralTestResult integral_test(const ScalingFunction& h, double alpha, double log_t_max, double quadrature_tolerance) {
    if (!(alpha > 0.0)) throw std::invalid_argument("integral_test: alpha must be positive");
    IntegralTestResult res;
    std::ostringstream ev;
    if (h.kind == ScalingFunction::Kind::power_loglog) {
        // With u = log t the integrand is du / (u^{a alpha} (log u)^{b alpha}).
        const double pa = h.log_power * alpha;
        const double pb = h.loglog_power * alpha;
        const bool borderline = std::abs(pa - 1.0) < 1e-12;
        const bool conv = borderline ? pb > 1.0 + 1e-12 : pa > 1.0;
        res.classification = conv ? IntegralClass::converges : IntegralClass::diverges;
        ev << "closed form: du/(u^" << pa << " (log u)^" << pb << ")";
        if (borderline) ev << "; log-power exponent is 1, decided by the log log exponent";
        res.evidence = ev.str();
        return res;
    }

    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    const int j_max = static_cast<int>(std::floor(std::log2(log_t_max))) - 1;
    if (j_max < 8) throw std::invalid_argument("integral_test: log_t_max too small for a block extrapolation");
    auto integrand = [&](double s) {
        const double u = std::exp(s);
        const double hv = h.value_at_log(u);
        if (!(hv > 0.0)) throw std::domain_error("integral_test: h is not positive at log t = " + std::to_string(u));
        return u * std::pow(hv, -alpha);
    };
    for (int j = 1; j <= j_max; ++j) {
        res.blocks.push_back(GK::integrate(integrand, j * std::log(2.0), (j + 1) * std::log(2.0), 12, quadrature_tolerance));
    }

    // Extrapolation model: blocks decay like j^{-p}, so the integral converges iff p > 1.
    const std::size_t tail = 16;
    std::vector<double> lj, lb;
    for (std::size_t i = res.blocks.size() - tail; i < res.blocks.size(); ++i) {
        lj.push_back(std::log(static_cast<double>(i + 1)));
        lb.push_back(std::log(res.blocks[i]));
    }
    res.block_decay = -linear_fit(lj, lb).slope;
    const std::size_t n = res.blocks.size();
    const double last_ratio = res.blocks[n - 1] / res.blocks[n - 2];
    if (res.block_decay > 1.25 || last_ratio < 0.9) res.classification = IntegralClass::converges;
    else if (res.block_decay < 0.75) res.classification = IntegralClass::diverges;
    else res.classification = IntegralClass::inconclusive;
    ev << "numeric: " << n << " doubling blocks in log t up to " << std::pow(2.0, j_max + 1) << ", fitted block decay j^-"
       << res.block_decay << ", last block ratio " << last_ratio;
    res.evidence = ev.str();
    return res;
}

ScaledDistanceRecord scaled_distance(const SimPath& path, double log_T, double delta, double alpha,
                                     const ShiftFunction& f) {
    if (!(log_T > std::exp(1.0))) throw std::invalid_argument("scaled_distance needs T > e^e");
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("scaled_distance: delta must lie in [0,1]");
    const double L = std::log(log_T);
    ScaledDistanceRecord rec;
    rec.log_T = log_T;
    rec.delta = delta;
    rec.distance = std::pow(L, 1.0 / alpha) * sup_distance(path, f, std::pow(L, delta - 1.0 / alpha));
    rec.running_min = rec.distance;
    return rec;
}

std::pair<SimPath, SimPath> yz_decompose(const SimPath& path, double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("yz_decompose: ratio must lie in (0,1)");
    const double pivot = path.value_at(ratio);
    SimPath y = path;
    SimPath z = path;
    y.jumps.clear();
    z.jumps.clear();
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        if (path.times[i] <= ratio) {
            z.values[i] = 0.0;
        } else {
            y.values[i] = pivot;
            z.values[i] = path.values[i] - pivot;
        }
    }
    for (const auto& j : path.jumps) (j.time <= ratio ? y : z).jumps.push_back(j);
    return {std::move(y), std::move(z)};
}

LiminfTrace liminf_trace(std::vector<ScaledDistanceRecord> records) {
    LiminfTrace tr;
    double run = INFINITY;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0 && !(records[i].log_T > records[i - 1].log_T)) {
            throw std::invalid_argument("liminf_trace: records must be ordered by strictly increasing T");
        }
        run = std::min(run, records[i].distance);
        records[i].running_min = run;
    }
    tr.final_value = records.empty() ? 0.0 : run;
    tr.records = std::move(records);
    return tr;
}

LiminfTrace distance_sweep(const AlphaStableParams& params, const GridSpec& grid, double delta, const ShiftFunction& f,
                           std::size_t n_steps, std::uint64_t seed, const BatchRunner& runner) {
    const std::vector<double> logs = grid_log_times(grid);
    std::vector<ScaledDistanceRecord> recs(logs.size());
    runner.run(logs.size(), [&](std::size_t i) {
        const long k = grid.k_min + static_cast<long>(i);
        RngStream rng(seed, static_cast<std::uint64_t>(k));
        const SimPath p = sample_stable_path(params, n_steps, rng);
        recs[i] = scaled_distance(p, logs[i], delta, params.alpha(), f);
        recs[i].k = k;
    });
    return liminf_trace(std::move(recs));
}

} // namespace stabledev
