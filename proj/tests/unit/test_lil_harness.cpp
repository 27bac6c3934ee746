#include "doctest.h"

#include "stabledev/lil_harness.hpp"
#include "stabledev/stats.hpp"

#include <cmath>
#include <stdexcept>

using namespace stabledev;

namespace {

const AlphaStableParams kP = AlphaStableParams::make(1.5);

SimPath flat_path(std::size_t n) {
    SimPath p;
    for (std::size_t i = 0; i <= n; ++i) {
        p.times.push_back(static_cast<double>(i) / static_cast<double>(n));
        p.values.push_back(0.0);
    }
    return p;
}

} // namespace

TEST_CASE("grid examples") {
    CHECK(grid_log_time(GridKind::upper, 3) == doctest::Approx(9.0));
    CHECK(grid_log_time(GridKind::upper, 2, 1.5) == doctest::Approx(std::pow(2.0, 1.5)));
    const double l = std::log(100.0);
    CHECK(grid_log_time(GridKind::lower, 100) == doctest::Approx(100.0 / (l * l * l)));

    const GridSpec up{GridKind::upper, 2.0, 1, 4};
    const auto logs = grid_log_times(up);
    CHECK(logs == std::vector<double>{1.0, 4.0, 9.0, 16.0});
    const auto ts = grid_times(up);
    CHECK(ts[1] == doctest::Approx(std::exp(4.0)));
    for (std::size_t i = 1; i < logs.size(); ++i) CHECK(logs[i] > logs[i - 1]);
}

TEST_CASE("grid errors") {
    CHECK_THROWS_AS(grid_log_time(GridKind::lower, 20), std::invalid_argument);
    CHECK_NOTHROW(grid_log_time(GridKind::lower, kLowerGridMinK));
    CHECK_THROWS_AS(grid_log_time(GridKind::upper, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(grid_log_times(GridSpec{GridKind::upper, 2.0, 5, 4}), std::invalid_argument);
    // k = 27 gives log T = 729
    CHECK_THROWS_AS(grid_times(GridSpec{GridKind::upper, 2.0, 20, 27}), std::overflow_error);
    CHECK(grid_log_times(GridSpec{GridKind::upper, 2.0, 20, 27}).back() == 729.0);
}

TEST_CASE("lower-grid ratios at k = 1e6") {
    const Lemma2Ratios r = lemma2_ratios(1'000'000, 0.5, 1.5);
    CHECK(r.r1 == doctest::Approx(4.8e-4).epsilon(0.05));
    CHECK(r.r2 == doctest::Approx(0.042).epsilon(0.05));
    CHECK(r.r3 == doctest::Approx(0.9997).epsilon(1e-4));
    CHECK(r.r1 >= 0.0);
    CHECK(r.r2 >= 0.0);
}

TEST_CASE("r1 decreases along the grid and small k is refused") {
    double prev = INFINITY;
    for (long k : {1000L, 10000L, 100000L, 1000000L}) {
        const Lemma2Ratios r = lemma2_ratios(k, 0.5, 1.5);
        CHECK(r.r1 < prev);
        CHECK(r.r3 < 1.0);
        prev = r.r1;
    }
    CHECK_THROWS_AS(lemma2_ratios(kRatioMinK - 1, 0.5, 1.5), std::invalid_argument);
    CHECK_NOTHROW(lemma2_ratios(kRatioMinK, 0.5, 1.5));
    CHECK_THROWS_AS(lemma2_ratios(1000, 0.5, 2.0), std::invalid_argument);
}

TEST_CASE("integral test closed-form cases") {
    const double a = 1.5;
    CHECK(integral_test(ScalingFunction::power_loglog(2.0 / a, 0.0), a).classification == IntegralClass::converges);
    CHECK(integral_test(ScalingFunction::power_loglog(1.0 / a, 0.0), a).classification == IntegralClass::diverges);
    CHECK(integral_test(ScalingFunction::power_loglog(0.0, -1.0 / a), a).classification == IntegralClass::diverges);
    CHECK(integral_test(ScalingFunction::power_loglog(1.0 / a, 2.0 / a), a).classification == IntegralClass::converges);
    CHECK(integral_test(ScalingFunction::power_loglog(1.0 / a, 1.0 / a), a).classification == IntegralClass::diverges);
    CHECK_FALSE(integral_test(ScalingFunction::power_loglog(1.0 / a, 2.0 / a), a).evidence.empty());
    CHECK(to_string(IntegralClass::inconclusive) == "inconclusive");
}

TEST_CASE("integral test numeric path agrees with the closed form") {
    const double a = 1.5;
    auto custom = [](double p, double q) {
        return ScalingFunction::make_custom(
            [p, q](double u) { return std::pow(u, p) * std::pow(std::log(u), q); }, "custom");
    };
    const IntegralTestResult conv = integral_test(custom(2.0 / a, 0.0), a);
    CHECK(conv.classification == IntegralClass::converges);
    CHECK_FALSE(conv.blocks.empty());
    CHECK(integral_test(custom(1.0 / a, 0.0), a).classification == IntegralClass::diverges);
    const IntegralTestResult border = integral_test(custom(1.0 / a, 2.0 / a), a);
    CHECK(border.classification == IntegralClass::converges);
    CHECK(border.block_decay == doctest::Approx(2.0).epsilon(0.15));
    // blocks decaying like 1/j cannot be told apart from the boundary
    CHECK(integral_test(custom(1.0 / a, 1.0 / a), a).classification == IntegralClass::inconclusive);
}

TEST_CASE("integral test rejects nonpositive h") {
    const auto bad = ScalingFunction::make_custom([](double u) { return 10.0 - u; }, "bad");
    CHECK_THROWS_AS(integral_test(bad, 1.5), std::domain_error);
    CHECK_THROWS_AS(integral_test(ScalingFunction::make_custom([](double u) { return u; }, "u"), 1.5, 100.0),
                    std::invalid_argument);
}

TEST_CASE("scaled distance examples") {
    const SimPath zero = flat_path(8);
    const double log_T = 1e4;
    const double L = std::log(log_T);
    CHECK(scaled_distance(zero, log_T, 0.5, 1.5, ShiftFunction::zero()).distance == 0.0);
    CHECK(scaled_distance(zero, log_T, 0.5, 1.5, ShiftFunction::identity()).distance == doctest::Approx(std::sqrt(L)));
    CHECK(scaled_distance(zero, log_T, 1.0, 1.5, ShiftFunction::tent()).distance == doctest::Approx(L));
    CHECK_THROWS_AS(scaled_distance(zero, 2.0, 0.5, 1.5, ShiftFunction::zero()), std::invalid_argument);
    CHECK_THROWS_AS(scaled_distance(zero, log_T, 1.5, 1.5, ShiftFunction::zero()), std::invalid_argument);
}

TEST_CASE("scaled distance of a typical path grows like (log log T)^{1/alpha}") {
    const double log_T = 1e6;
    const double L = std::log(log_T);
    std::vector<double> d, raw;
    for (std::uint64_t i = 0; i < 2001; ++i) {
        RngStream rng(1, i);
        const SimPath p = sample_stable_path(kP, 64, rng);
        d.push_back(scaled_distance(p, log_T, 0.5, 1.5, ShiftFunction::zero()).distance);
        raw.push_back(sup_distance(p, ShiftFunction::zero(), 0.0));
    }
    CHECK(median(d) == doctest::Approx(std::pow(L, 1.0 / 1.5) * median(raw)).epsilon(1e-12));
    CHECK(median(raw) > 0.5);
    CHECK(median(raw) < 5.0);
}

TEST_CASE("Y + Z reconstructs X and the two parts are independent") {
    RngStream rng(2, 0);
    const SimPath x = sample_stable_path(kP, 64, rng);
    const auto [y, z] = yz_decompose(x, 0.37);
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        CHECK(y.values[i] + z.values[i] == doctest::Approx(x.values[i]).epsilon(1e-12));
        if (x.times[i] <= 0.37) CHECK(z.values[i] == 0.0);
        else CHECK(y.values[i] == y.values.back());
    }
    CHECK_THROWS_AS(yz_decompose(x, 1.0), std::invalid_argument);

    // bounded transforms so that the correlation has a finite variance
    const int n = 10000;
    std::vector<double> a, b;
    for (int i = 0; i < n; ++i) {
        RngStream r(3, static_cast<std::uint64_t>(i));
        const auto [yi, zi] = yz_decompose(sample_stable_path(kP, 32, r), 0.5);
        a.push_back(std::atan(yi.values.back()));
        b.push_back(std::atan(zi.values.back()));
    }
    CHECK(std::abs(pearson_correlation(a, b)) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("jump-resolved split keeps every jump on its side") {
    RngStream rng(4, 0);
    const SimPath x = sample_jump_path(kP, 0.2, true, 32, rng);
    const auto [y, z] = yz_decompose(x, 0.5);
    CHECK(y.jumps.size() + z.jumps.size() == x.jumps.size());
    for (const auto& j : y.jumps) CHECK(j.time <= 0.5);
    for (const auto& j : z.jumps) CHECK(j.time > 0.5);
}

TEST_CASE("liminf trace keeps a running minimum") {
    std::vector<ScaledDistanceRecord> recs;
    const std::vector<double> dist{3.0, 1.0, 2.0, 0.5, 0.7};
    for (std::size_t i = 0; i < dist.size(); ++i) recs.push_back({static_cast<long>(i), 10.0 + i, 0.5, dist[i], 0.0});
    const LiminfTrace tr = liminf_trace(recs);
    const std::vector<double> expected{3.0, 1.0, 1.0, 0.5, 0.5};
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(tr.records[i].running_min == expected[i]);
    CHECK(tr.final_value == 0.5);
    CHECK(tr.note == std::string(kIidLabel));
    std::swap(recs[1], recs[2]);
    CHECK_THROWS_AS(liminf_trace(recs), std::invalid_argument);
}

TEST_CASE("distance sweep is reproducible and uses one stream per grid point") {
    const GridSpec grid{GridKind::upper, 2.0, 2, 12};
    const LiminfTrace a = distance_sweep(kP, grid, 0.5, ShiftFunction::identity(), 64, 5, serial_runner());
    const LiminfTrace b = distance_sweep(kP, grid, 0.5, ShiftFunction::identity(), 64, 5, ThreadPoolRunner(3));
    REQUIRE(a.records.size() == 11);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].distance == b.records[i].distance);
        CHECK(a.records[i].k == static_cast<long>(i) + 2);
        if (i > 0) CHECK(a.records[i].running_min <= a.records[i - 1].running_min);
    }
    RngStream rng(5, 7);
    const SimPath p = sample_stable_path(kP, 64, rng);
    CHECK(a.records[5].distance == scaled_distance(p, 49.0, 0.5, 1.5, ShiftFunction::identity()).distance);
    // log T_1 = 1 is below e
    CHECK_THROWS_AS(distance_sweep(kP, GridSpec{GridKind::upper, 2.0, 1, 3}, 0.5, ShiftFunction::zero(), 8, 1,
                                   serial_runner()),
                    std::invalid_argument);
}
