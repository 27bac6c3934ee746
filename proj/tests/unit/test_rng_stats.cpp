#include "doctest.h"

#include "stabledev/parallel.hpp"
#include "stabledev/rng.hpp"
#include "stabledev/stats.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace stabledev;

TEST_CASE("RngStream is reproducible per (seed, stream)") {
    RngStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x > 0.0);
        CHECK(x < 1.0);
        differs_c |= x != c.uniform();
        differs_d |= x != d.uniform();
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("RngStream distributions have the right first moments") {
    RngStream rng(1, 0);
    const int n = 200000;
    double su = 0, se = 0, sn = 0, sn2 = 0, sp = 0;
    for (int i = 0; i < n; ++i) {
        su += rng.uniform();
        se += rng.exponential();
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
        sp += static_cast<double>(rng.poisson(3.5));
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(se / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(sn / n) < 0.01);
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(sp / n == doctest::Approx(3.5).epsilon(0.01));
    CHECK(rng.poisson(0.0) == 0u);
    CHECK_THROWS_AS(rng.poisson(-1.0), std::invalid_argument);
}

TEST_CASE("clopper_pearson known values") {
    const auto [lo, hi] = clopper_pearson(0, 10, 0.95);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(1.0 - std::pow(0.025, 0.1)).epsilon(1e-10));
    const auto [lo2, hi2] = clopper_pearson(10, 10, 0.95);
    CHECK(lo2 == doctest::Approx(std::pow(0.025, 0.1)).epsilon(1e-10));
    CHECK(hi2 == 1.0);
    const auto [lo3, hi3] = clopper_pearson(5, 20, 0.95);
    CHECK(lo3 < 0.25);
    CHECK(hi3 > 0.25);
}

TEST_CASE("ks_two_sample") {
    std::vector<double> a, b, c;
    RngStream rng(3, 0);
    for (int i = 0; i < 3000; ++i) {
        a.push_back(rng.normal());
        b.push_back(rng.normal());
        c.push_back(rng.normal() + 0.3);
    }
    CHECK(ks_two_sample(a, a).statistic == 0.0);
    CHECK(ks_two_sample(a, b).p_value > 0.01);
    CHECK(ks_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("chi_square_sf") {
    CHECK(chi_square_sf(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(chi_square_sf(0.0, 4.0) == doctest::Approx(1.0));
}

TEST_CASE("linear_fit recovers an exact line and reports errors") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 - 3.0 * v);
    const LinearFit fit = linear_fit(x, y);
    CHECK(fit.slope == doctest::Approx(-3.0));
    CHECK(fit.intercept == doctest::Approx(2.0));
    CHECK(fit.slope_se == doctest::Approx(0.0).epsilon(1e-10));

    const std::vector<double> yn{1.1, 1.9, 3.2, 3.8, 5.1};
    const std::vector<double> w{1, 1, 1, 1, 1};
    const LinearFit a = linear_fit(x, yn);
    const LinearFit b = linear_fit(x, yn, w);
    CHECK(a.slope == doctest::Approx(b.slope));
    CHECK(a.slope_se > 0.0);
}

TEST_CASE("summary statistics") {
    const std::vector<double> v{1, 2, 3, 4};
    CHECK(mean(v) == 2.5);
    CHECK(variance(v) == doctest::Approx(5.0 / 3.0));
    CHECK(median(v) == 2.5);
    CHECK(median({3, 1, 2}) == 2.0);
    const std::vector<double> w{2, 4, 6, 8};
    CHECK(pearson_correlation(v, w) == doctest::Approx(1.0));
}

TEST_CASE("runners execute every task exactly once") {
    for (std::size_t workers : {1u, 2u, 5u}) {
        ThreadPoolRunner runner(workers);
        std::vector<std::atomic<int>> seen(1000);
        runner.run(seen.size(), [&](std::size_t i) { seen[i]++; });
        for (auto& s : seen) CHECK(s.load() == 1);
    }
    std::vector<int> chunks(1000, 0);
    for_each_chunk(ThreadPoolRunner(3), chunks.size(), 64, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) chunks[i]++;
    });
    for (int c : chunks) CHECK(c == 1);
}

TEST_CASE("runner propagates task exceptions") {
    ThreadPoolRunner runner(3);
    CHECK_THROWS_AS(runner.run(100,
                               [](std::size_t i) {
                                   if (i == 37) throw std::runtime_error("boom");
                               }),
                    std::runtime_error);
    CHECK_THROWS_AS(serial_runner().run(3, [](std::size_t) { throw std::logic_error("x"); }), std::logic_error);
}
