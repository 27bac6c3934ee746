#include "doctest.h"

#include "stabledev/girsanov_tilt.hpp"
#include "stabledev/path_sim.hpp"
#include "stabledev/stats.hpp"

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <map>

using namespace stabledev;

namespace {

const AlphaStableParams kP = AlphaStableParams::make(1.5);

double sup_abs(const SimPath& p) {
    double m = 0.0;
    for (double v : p.values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST_CASE("sample_stable_path shape and determinism") {
    RngStream a(7, 0), b(7, 0);
    const SimPath p = sample_stable_path(kP, 4, a);
    CHECK(p.values.size() == 5);
    CHECK(p.times.size() == 5);
    CHECK(p.values[0] == 0.0);
    CHECK(p.times.back() == 1.0);
    CHECK(p.mode == PathMode::increment);
    CHECK(p.jumps.empty());
    const SimPath q = sample_stable_path(kP, 4, b);
    CHECK(p.values == q.values);
    RngStream c(7, 0);
    CHECK_THROWS_AS(sample_stable_path(kP, 0, c), std::invalid_argument);
}

TEST_CASE("empirical characteristic function at u = 1 matches exp(-c_alpha)") {
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        RngStream rng(11, static_cast<std::uint64_t>(i));
        const double c = std::cos(sample_stable_path(kP, 1, rng).values[1]);
        s += c;
        s2 += c * c;
    }
    const double m = s / n;
    const double se = std::sqrt((s2 / n - m * m) / n);
    CHECK(std::abs(m - std::exp(-kP.c_alpha())) < 3.0 * se);
}

TEST_CASE("jump counts above eps are Poisson with mean (2/alpha) eps^{-alpha}") {
    const double eps = 0.5;
    const double mean = (2.0 / 1.5) * std::pow(eps, -1.5);
    const int n = 10000;
    std::map<std::size_t, int> freq;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        RngStream rng(31, static_cast<std::uint64_t>(i));
        const SimPath p = sample_jump_path(kP, eps, true, 8, rng);
        CHECK(p.values[0] == 0.0);
        for (const auto& j : p.jumps) {
            CHECK(std::abs(j.size) > eps);
            CHECK(j.time > 0.0);
            CHECK(j.time <= 1.0);
        }
        freq[p.jumps.size()]++;
        s += static_cast<double>(p.jumps.size());
    }
    CHECK(std::abs(s / n - mean) < 3.0 * std::sqrt(mean / n));

    // chi-square goodness of fit with the upper tail pooled
    boost::math::poisson_distribution<double> pois(mean);
    double chi2 = 0.0;
    int cells = 0;
    const std::size_t top = 9;
    for (std::size_t k = 0; k <= top; ++k) {
        const double pk = k < top ? boost::math::pdf(pois, static_cast<double>(k))
                                  : boost::math::cdf(boost::math::complement(pois, static_cast<double>(top - 1)));
        double observed = 0.0;
        for (const auto& [count, f] : freq)
            if (k < top ? count == k : count >= top) observed += f;
        const double expected = pk * n;
        chi2 += (observed - expected) * (observed - expected) / expected;
        ++cells;
    }
    CHECK(chi_square_sf(chi2, cells - 1) > 0.01);
}

TEST_CASE("jump path bookkeeping") {
    RngStream rng(13, 0);
    const SimPath on = sample_jump_path(kP, 0.1, true, 16, rng);
    CHECK(on.small_jump_variance == doctest::Approx(2.0 * std::pow(0.1, 0.5) / 0.5));
    RngStream rng2(13, 0);
    const SimPath off = sample_jump_path(kP, 0.1, false, 16, rng2);
    CHECK(off.small_jump_variance == 0.0);
    // without the Gaussian proxy the path is piecewise constant: the grid values are the jump sums
    double acc = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 1; i < off.times.size(); ++i) {
        while (j < off.jumps.size() && off.jumps[j].time <= off.times[i]) acc += off.jumps[j++].size;
        CHECK(off.values[i] == doctest::Approx(acc));
    }
    RngStream rng3(1, 1);
    CHECK_THROWS_AS(sample_jump_path(kP, 0.0, true, 4, rng3), std::invalid_argument);
}

TEST_CASE("truncated path: small jumps, symmetric, variance budget") {
    const double r = 1.0;
    const int n = 10000;
    double s = 0.0, s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
        RngStream rng(14, static_cast<std::uint64_t>(i));
        const SimPath p = sample_truncated_path(kP, r, 64, rng);
        for (const auto& j : p.jumps) CHECK(std::abs(j.size) < r);
        const double x = p.values.back();
        s += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    const double m = s / n;
    const double var = s2 / n - m * m;
    CHECK(std::abs(m) < 3.0 * std::sqrt(var / n));
    // jumps in (eps, r) plus the Gaussian proxy for |x| < eps carry 2 r^{2-alpha}/(2-alpha)
    const double target = 2.0 / 0.5;
    const double var_se = std::sqrt((s4 / n - var * var) / n);
    CHECK(std::abs(var - target) < 3.0 * var_se);
}

TEST_CASE("truncated path with eps = r keeps only the Gaussian proxy") {
    RngStream rng(15, 0);
    const SimPath p = sample_truncated_path(kP, 0.5, 32, rng, 0.5);
    CHECK(p.jumps.empty());
    CHECK(p.values[0] == 0.0);
    CHECK(p.small_jump_variance == doctest::Approx(2.0 * std::pow(0.5, 0.5) / 0.5));
    RngStream rng2(15, 0);
    CHECK_THROWS_AS(sample_truncated_path(kP, 0.5, 32, rng2, 0.6), std::invalid_argument);
}

TEST_CASE("zero tilt reduces to the truncated sampler with zero weight") {
    const TiltSpec tilt = TiltSpec::middle_shift(kP, ShiftFunction::zero(), 0.2, 0.8);
    for (std::uint64_t i = 0; i < 20; ++i) {
        RngStream a(16, i), b(16, i);
        const TiltedSample t = sample_tilted_path(tilt, 64, a);
        const SimPath u = sample_truncated_path(kP, 0.8, 64, b);
        CHECK(t.log_weight == 0.0);
        CHECK(t.path.values == u.values);
        CHECK(t.path.jumps.size() == u.jumps.size());
    }
}

TEST_CASE("tilted path: weight has mean one, jumps carry the compensator shift") {
    const double r = 0.8;
    const TiltSpec tilt = TiltSpec::middle_shift(kP, ShiftFunction::identity(), 0.2, r);
    const double eps = r / 50.0;
    const int n = 10000;
    double sw = 0, sw2 = 0, sj = 0, sj2 = 0, sx = 0, sx2 = 0;
    for (int i = 0; i < n; ++i) {
        RngStream rng(17, static_cast<std::uint64_t>(i));
        const TiltedSample s = sample_tilted_path(tilt, 256, rng);
        const double w = std::exp(s.log_weight);
        sw += w;
        sw2 += w * w;
        double jump_sum = 0.0;
        for (const auto& j : s.path.jumps) jump_sum += j.size;
        sj += jump_sum;
        sj2 += jump_sum * jump_sum;
        sx += s.path.values.back();
        sx2 += s.path.values.back() * s.path.values.back();
    }
    auto se = [n](double a, double a2) { return std::sqrt((a2 / n - (a / n) * (a / n)) / n); };
    CHECK(std::abs(sw / n - 1.0) < 4.0 * se(sw, sw2));

    // int_0^1 int_{eps<|x|<r} (e^theta - 1) x |x|^{-1-alpha} dx dt by quadrature
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    double shift = 0.0;
    for (double sign : {1.0, -1.0}) {
        shift += GK::integrate(
            [&](double x) { return std::expm1(theta(tilt, sign * x, 0.5)) * sign * x * std::pow(x, -2.5); }, eps, r);
    }
    CHECK(sj / n > 0.0);
    CHECK(std::abs(sj / n - shift) < 3.0 * se(sj, sj2));
    CHECK(shift == doctest::Approx(tilt.drift_per_shift(eps)).epsilon(1e-8));
    // the sampled process itself is the martingale
    CHECK(std::abs(sx / n) < 3.0 * se(sx, sx2));
}

TEST_CASE("invalid tilts are rejected by the sampler") {
    const TiltSpec bad = TiltSpec::middle_shift(kP, ShiftFunction::identity(), 5.0, 0.8);
    RngStream rng(18, 0);
    CHECK_THROWS_AS(sample_tilted_path(bad, 16, rng), std::invalid_argument);
}

TEST_CASE("time change: identity and closed-form phi") {
    RngStream a(19, 0), b(19, 0);
    const TimeChangedPath tc = time_change_sample([](double) { return 1.0; }, kP, 16, a);
    const SimPath h = sample_stable_path(kP, 16, b);
    CHECK(tc.total_mass == doctest::Approx(1.0));
    for (std::size_t i = 0; i < h.values.size(); ++i) {
        CHECK(tc.path.values[i] == doctest::Approx(h.values[i]).epsilon(1e-12));
        CHECK(tc.operational_times[i] == doctest::Approx(h.times[i]).epsilon(1e-14));
    }
    RngStream c(19, 1);
    const TimeChangedPath sq = time_change_sample([](double t) { return 2.0 * t; }, kP, 16, c);
    CHECK(sq.total_mass == doctest::Approx(1.0));
    for (std::size_t i = 0; i < sq.path.times.size(); ++i) {
        CHECK(sq.operational_times[i] == doctest::Approx(sq.path.times[i] * sq.path.times[i]).epsilon(1e-13));
    }
    RngStream d(19, 2);
    CHECK_THROWS_AS(time_change_sample([](double t) { return t - 0.5; }, kP, 8, d), std::invalid_argument);
    RngStream e(19, 3);
    CHECK_THROWS_AS(time_change_sample([](double) { return 0.0; }, kP, 8, e), std::invalid_argument);
}

TEST_CASE("self-similarity: X(Ts)/T^{1/alpha} has the law of X(s)") {
    const std::size_t steps = 64;
    const int n = 10000;
    for (double T : {2.0, 8.0}) {
        std::map<double, std::vector<double>> scaled, base;
        for (int i = 0; i < n; ++i) {
            RngStream r1(20, static_cast<std::uint64_t>(i)), r2(21, static_cast<std::uint64_t>(i));
            const TimeChangedPath big = time_change_sample([T](double) { return T; }, kP, steps, r1);
            const SimPath unit = sample_stable_path(kP, steps, r2);
            for (double s : {0.25, 0.5, 1.0}) {
                const auto idx = static_cast<std::size_t>(s * steps);
                scaled[s].push_back(big.path.values[idx] / std::pow(T, 1.0 / 1.5));
                base[s].push_back(unit.values[idx]);
            }
        }
        for (double s : {0.25, 0.5, 1.0}) CHECK(ks_two_sample(scaled[s], base[s]).p_value > 0.01);
    }
}

TEST_CASE("symmetry: X(1) and -X(1) agree in law") {
    std::vector<double> a, b;
    for (int i = 0; i < 10000; ++i) {
        RngStream r1(22, static_cast<std::uint64_t>(i)), r2(23, static_cast<std::uint64_t>(i));
        a.push_back(sample_stable_path(kP, 16, r1).values.back());
        b.push_back(-sample_stable_path(kP, 16, r2).values.back());
    }
    CHECK(ks_two_sample(a, b).p_value > 0.01);
}

TEST_CASE("sup_distance examples") {
    RngStream rng(24, 0);
    const SimPath p = sample_stable_path(kP, 32, rng);
    CHECK(sup_distance(p, ShiftFunction::identity(), 0.0) == sup_abs(p));

    SimPath zero;
    zero.times = {0.0, 0.5, 1.0};
    zero.values = {0.0, 0.0, 0.0};
    CHECK(sup_distance(zero, ShiftFunction::identity(), 2.0) == 2.0);
    CHECK(sup_distance(zero, ShiftFunction::tent(), 1.0) == 1.0);
}

TEST_CASE("sup_distance sees both sides of a jump") {
    // continuous part 0, jump +3 at t = 0.3 and -3 at t = 0.4, all inside one grid step
    SimPath p;
    p.mode = PathMode::jump_resolved;
    p.times = {0.0, 1.0};
    p.values = {0.0, 0.0};
    p.jumps = {{0.3, 3.0}, {0.4, -3.0}};
    CHECK(sup_distance(p, ShiftFunction::zero(), 0.0) == doctest::Approx(3.0));
    CHECK(p.value_at(0.35) == doctest::Approx(3.0));
    CHECK(p.value_at(0.5) == doctest::Approx(0.0));
    CHECK(p.max_abs_jump() == 3.0);
}

TEST_CASE("sample_sup_norms does not depend on the runner") {
    const auto a = sample_sup_norms(kP, 300, 64, 9, serial_runner());
    const auto b = sample_sup_norms(kP, 300, 64, 9, ThreadPoolRunner(4));
    CHECK(a == b);
    RngStream rng(9, 17);
    CHECK(a[17] == sup_abs(sample_stable_path(kP, 64, rng)));
}

TEST_CASE("CSV dumps") {
    SimPath p;
    p.times = {0.0, 1.0};
    p.values = {0.0, 0.5};
    p.jumps = {{0.25, 0.75}};
    CHECK(path_to_csv(p) == "t,x\n0,0\n1,0.5\n");
    CHECK(jumps_to_csv(p) == "t,size\n0.25,0.75\n");
}
