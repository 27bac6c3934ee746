#include "doctest.h"

#include "stabledev/process_model.hpp"
#include "stabledev/rng.hpp"

#include <cmath>

using namespace stabledev;

TEST_CASE("AlphaStableParams validates alpha") {
    CHECK_THROWS_AS(AlphaStableParams::make(1.0), std::invalid_argument);
    CHECK_THROWS_AS(AlphaStableParams::make(2.0), std::invalid_argument);
    CHECK_THROWS_AS(AlphaStableParams::make(0.5), std::invalid_argument);
    const auto p = AlphaStableParams::make(1.5);
    CHECK(p.alpha() == 1.5);
    CHECK(p.c_alpha() > 0.0);
    CHECK(p.tail_mass(1.0) == doctest::Approx(4.0 / 3.0));
    CHECK(p.small_jump_variance(1.0) == doctest::Approx(4.0));
}

TEST_CASE("make_shift examples") {
    const ShiftFunction zero = ShiftFunction::make({{0, 0}, {1, 0}});
    CHECK(zero.sup_deriv() == 0.0);

    const ShiftFunction id = ShiftFunction::make({{0, 0}, {1, 1}});
    CHECK(id.sup_deriv() == 1.0);
    CHECK(id.l2_deriv() == doctest::Approx(1.0));

    const ShiftFunction tent = ShiftFunction::make({{0, 0}, {0.5, 1}, {1, 0}});
    CHECK(tent.sup_deriv() == 2.0);
    CHECK(tent.l2_deriv() == doctest::Approx(2.0));
    CHECK(tent.end_value() == 0.0);
}

TEST_CASE("make_shift rejects malformed knots") {
    CHECK_THROWS_AS(ShiftFunction::make({}), std::invalid_argument);
    CHECK_THROWS_AS(ShiftFunction::make({{0, 0.1}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(ShiftFunction::make({{0, 0}, {0.6, 1}, {0.4, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(ShiftFunction::make({{0, 0}, {0.5, 1}}), std::invalid_argument);
}

TEST_CASE("eval_shift examples") {
    CHECK(ShiftFunction::tent()(0.25) == 0.5);
    CHECK(ShiftFunction::tent()(0.0) == 0.0);
    CHECK(ShiftFunction::random_piecewise(6, 1.0, 9)(0.0) == 0.0);
    CHECK(ShiftFunction::identity()(0.7) == 0.7);
    CHECK_THROWS_AS(ShiftFunction::identity()(1.5), std::out_of_range);
    CHECK_THROWS_AS(ShiftFunction::identity()(-0.1), std::out_of_range);
}

TEST_CASE("evaluation is exact at knots and slopes are piecewise constant") {
    const ShiftFunction f = ShiftFunction::make({{0, 0}, {0.3, 0.6}, {0.7, -0.2}, {1, 0.1}});
    CHECK(f(0.3) == 0.6);
    CHECK(f(0.7) == -0.2);
    CHECK(f(1.0) == 0.1);
    CHECK(f.slope_at(0.1) == doctest::Approx(2.0));
    CHECK(f.slope_at(0.5) == doctest::Approx(-2.0));
    CHECK(f.slope_at(1.0) == doctest::Approx(1.0));
    CHECK(f.l2_deriv() * f.l2_deriv() == doctest::Approx(4 * 0.3 + 4 * 0.4 + 1 * 0.3));
    CHECK(f.even_moment(1) == doctest::Approx(4 * 0.3 + 4 * 0.4 + 1 * 0.3));
}

TEST_CASE("random_piecewise respects the slope bound and is reproducible") {
    const ShiftFunction a = ShiftFunction::random_piecewise(8, 1.0, 42);
    const ShiftFunction b = ShiftFunction::random_piecewise(8, 1.0, 42);
    CHECK(a.knots().size() == 8);
    CHECK(a.sup_deriv() <= 1.0);
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("Schwarz bound |f(s) - f(as)| <= l2 (1-a)^{1/2}") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ShiftFunction f = ShiftFunction::random_piecewise(3 + seed % 7, 3.0, seed);
        RngStream rng(seed, 1);
        for (int i = 0; i < 2000; ++i) {
            const double s = rng.uniform();
            const double a = rng.uniform();
            CHECK(std::abs(f(s) - f(a * s)) <= f.l2_deriv() * std::sqrt(1.0 - a) + 1e-12);
        }
    }
}

TEST_CASE("shift JSON round trip") {
    const ShiftFunction f = ShiftFunction::make({{0, 0}, {0.25, 0.5}, {1, -0.125}});
    const ShiftFunction g = ShiftFunction::from_json(f.to_json());
    CHECK(g.knots().size() == 3);
    CHECK(g(0.25) == 0.5);
    CHECK(g(1.0) == -0.125);
    CHECK_THROWS_AS(ShiftFunction::from_json("{\"a\": 1}"), std::invalid_argument);
    CHECK_THROWS_AS(ShiftFunction::from_json("[[0,0],[1]]"), std::invalid_argument);
    CHECK_THROWS_AS(ShiftFunction::from_json("not json"), std::invalid_argument);
}

TEST_CASE("triplets have finite min(1,x^2) mass") {
    const auto p = AlphaStableParams::make(1.5);
    const CenteredTriplet st = stable_triplet(p);
    CHECK(st.sigma2 == 0.0);
    // 2 (1/(2-alpha) + 1/alpha)
    CHECK(st.min1x2_mass(0.3) == doctest::Approx(2.0 * (2.0 + 2.0 / 3.0)).epsilon(1e-8));
    const CenteredTriplet tr = truncated_triplet(p, 0.5);
    CHECK(tr.min1x2_mass(0.0) == doctest::Approx(2.0 * std::pow(0.5, 0.5) / 0.5).epsilon(1e-8));
    CHECK(tr.levy_density(0.6, 0.0) == 0.0);
    CHECK(tr.gamma(0.5) == 0.0);
}

TEST_CASE("ScalingFunction evaluates through log T") {
    const auto h = ScalingFunction::power_loglog(2.0, -1.0);
    CHECK(h.value_at_log(std::exp(2.0)) == doctest::Approx(std::exp(4.0) / 2.0));
    const auto lil = ScalingFunction::lil_family(0.5, 1.5);
    CHECK(lil.log_power == 0.0);
    CHECK(lil.loglog_power == doctest::Approx(0.5 - 1.0 / 1.5));
    CHECK_THROWS_AS(h.value_at_log(0.5), std::domain_error);
    const auto c = ScalingFunction::make_custom([](double u) { return u * u; }, "u^2");
    CHECK(c.value_at_log(3.0) == 9.0);
}

TEST_CASE("Estimate intervals contain the value") {
    for (std::size_t hits : {0u, 1u, 4u, 50u, 995u, 1000u}) {
        const Estimate e = Estimate::from_bernoulli(hits, 1000);
        CHECK(e.ci_lo <= e.value);
        CHECK(e.value <= e.ci_hi);
        CHECK(e.ci_lo >= 0.0);
        CHECK(e.ci_hi <= 1.0);
    }
    CHECK(Estimate::from_bernoulli(0, 1000).interval == IntervalKind::clopper_pearson);
    CHECK(Estimate::from_bernoulli(3, 20).interval == IntervalKind::clopper_pearson);

    const Estimate e = Estimate::from_bernoulli(500, 1000);
    CHECK(e.interval == IntervalKind::normal);
    const double sd = std::sqrt(0.25 * 1000.0 / 999.0);
    CHECK(e.std_error == doctest::Approx(sd / std::sqrt(1000.0)));
    CHECK(e.ci_lo == doctest::Approx(0.5 - 1.96 * e.std_error));

    const Estimate m = Estimate::from_moments(0.02, 0.0004, 10, true);
    CHECK(m.ci_lo >= 0.0);
    CHECK(m.ci_lo <= m.value);
    const Estimate s = e.scaled(0.5);
    CHECK(s.value == doctest::Approx(0.25));
    CHECK(s.std_error == doctest::Approx(e.std_error / 2));
    CHECK_THROWS_AS(Estimate::from_bernoulli(3, 2), std::invalid_argument);
}
