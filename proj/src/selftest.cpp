#include "stabledev/selftest.hpp"

#include "stabledev/config.hpp"
#include "stabledev/constants.hpp"
#include "stabledev/girsanov_tilt.hpp"
#include "stabledev/lil_harness.hpp"
#include "stabledev/parallel.hpp"
#include "stabledev/path_sim.hpp"
#include "stabledev/smallball_mc.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace stabledev {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

} // namespace

std::vector<SelfTestItem> run_selftest() {
    std::vector<SelfTestItem> out;
    auto check = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
        SelfTestItem item{name, false, ""};
        try {
            auto [ok, detail] = body();
            item.pass = ok;
            item.detail = detail;
        } catch (const std::exception& e) {
            item.detail = std::string("exception: ") + e.what();
        }
        out.push_back(item);
    };

    check("c_alpha matches the Gamma-function identity", [] {
        double worst = 0.0;
        for (double a : {1.2, 1.5, 1.8}) {
            const double exact = 2.0 * boost::math::tgamma(1.0 - a) * std::sin(std::numbers::pi * (1.0 - a) / 2.0) / a;
            worst = std::max(worst, std::abs(c_alpha_symbol(a) / exact - 1.0));
        }
        return std::pair{worst < 1e-8, "max relative error " + fmt(worst)};
    });

    check("psi values", [] {
        const bool ok = psi(0.0) == 0.0 && close_rel(psi(1.0), 2.0 * std::log(2.0) - 1.0, 1e-14) &&
                        close_rel(psi(1e-6), 0.5e-12, 1e-5);
        return std::pair{ok, "psi(1) = " + fmt(psi(1.0))};
    });

    check("C(1.5) and C1(Id, 1.5) oracles", [] {
        const double c = series_C_alpha(1.5);
        const double c1 = series_C1(ShiftFunction::identity(), 1.5);
        const bool ok = close_rel(c, 1446.801400194183561, 1e-9) && close_rel(c1, std::numbers::pi / 96.0, 1e-9);
        return std::pair{ok, "C = " + fmt(c) + ", C1 = " + fmt(c1)};
    });

    check("shift function construction", [] {
        const ShiftFunction t = ShiftFunction::tent();
        const bool ok = t.sup_deriv() == 2.0 && close_rel(t.l2_deriv(), 2.0, 1e-15) && t(0.25) == 0.5 &&
                        ShiftFunction::identity()(0.7) == 0.7;
        return std::pair{ok, "tent sup " + fmt(t.sup_deriv())};
    });

    check("Gaussian spectral mode gives pi^2/8", [] {
        SpectralOptions opt;
        opt.gaussian_mode = true;
        const double k = estimate_K_alpha_spectral(2.0, 64, opt).value;
        const double target = std::numbers::pi * std::numbers::pi / 8.0;
        return std::pair{close_rel(k, target, 5e-3), "K_2 = " + fmt(k)};
    });

    check("tilt validity and theta", [] {
        const auto p = AlphaStableParams::make(1.5);
        const TiltSpec ok_tilt = TiltSpec::middle_shift(p, ShiftFunction::identity(), 0.2, 0.8);
        const TiltSpec bad_tilt = TiltSpec::middle_shift(p, ShiftFunction::identity(), 5.0, 0.8);
        const Validity v = validity_check(ok_tilt);
        const bool ok = v.pass && close_rel(v.margin, 0.95, 1e-14) && !validity_check(bad_tilt).pass &&
                        close_rel(theta(ok_tilt, 0.4, 0.3), std::log(1.025), 1e-14);
        return std::pair{ok, "margin " + fmt(v.margin)};
    });

    check("deterministic exponent series vs quadrature", [] {
        const auto p = AlphaStableParams::make(1.5);
        const TiltSpec t = TiltSpec::middle_shift(p, ShiftFunction::tent(), 1.0, 0.8);
        const double s = deterministic_exponent(t);
        const double q = deterministic_exponent_quadrature(t);
        return std::pair{close_rel(s, q, 1e-6), "series " + fmt(s) + ", quadrature " + fmt(q)};
    });

    check("tilted weight has mean one", [] {
        const auto p = AlphaStableParams::make(1.5);
        const TiltSpec t = TiltSpec::middle_shift(p, ShiftFunction::identity(), 0.2, 0.8);
        double s = 0.0, s2 = 0.0;
        const std::size_t n = 2000;
        for (std::size_t i = 0; i < n; ++i) {
            RngStream rng(11, i);
            const double w = std::exp(sample_tilted_path(t, 256, rng).log_weight);
            s += w;
            s2 += w * w;
        }
        const Estimate e = Estimate::from_moments(s, s2, n, false);
        return std::pair{std::abs(e.value - 1.0) <= 4.0 * e.std_error, "mean " + fmt(e.value) + " +- " + fmt(e.std_error)};
    });

    check("lower-grid ratios at k = 1e6", [] {
        const Lemma2Ratios r = lemma2_ratios(1'000'000, 0.5, 1.5);
        const bool ok = std::abs(r.r3 - 1.0) < 1e-3 && r.r1 < 0.05 && r.r2 < 0.05 && r.r1 >= 0.0 && r.r2 >= 0.0;
        return std::pair{ok, "r1 " + fmt(r.r1) + ", r2 " + fmt(r.r2) + ", r3 " + fmt(r.r3)};
    });

    check("integral test analytic cases", [] {
        const double a = 1.5;
        const bool ok =
            integral_test(ScalingFunction::power_loglog(2.0 / a, 0.0), a).classification == IntegralClass::converges &&
            integral_test(ScalingFunction::power_loglog(1.0 / a, 0.0), a).classification == IntegralClass::diverges &&
            integral_test(ScalingFunction::power_loglog(0.0, -1.0 / a), a).classification == IntegralClass::diverges &&
            integral_test(ScalingFunction::power_loglog(1.0 / a, 2.0 / a), a).classification == IntegralClass::converges;
        return std::pair{ok, std::string(ok ? "all four correct" : "misclassified")};
    });

    check("Y + Z reconstructs X", [] {
        const auto p = AlphaStableParams::make(1.5);
        RngStream rng(3, 0);
        const SimPath x = sample_stable_path(p, 64, rng);
        const auto [y, z] = yz_decompose(x, 0.37);
        double err = 0.0;
        for (std::size_t i = 0; i < x.values.size(); ++i) err = std::max(err, std::abs(y.values[i] + z.values[i] - x.values[i]));
        return std::pair{err <= 1e-12, "max error " + fmt(err)};
    });

    check("results do not depend on the worker count", [] {
        const auto p = AlphaStableParams::make(1.5);
        const auto q = SmallBallQuery::make(p, ShiftFunction::identity(), 0.5, 1.5, ShiftRegime::small);
        const auto a = estimate_crude(q, 600, 128, 5, serial_runner());
        const auto b = estimate_crude(q, 600, 128, 5, ThreadPoolRunner(3));
        return std::pair{a.hits == b.hits, "hits " + std::to_string(a.hits) + " vs " + std::to_string(b.hits)};
    });

    check("config parsing", [] {
        const Config c = Config::parse("seed = 4\n[smallball]\nr = 0.5 # radius\n");
        const bool ok = c.get_uint64("seed") == 4 && c.get_double("smallball.r") == 0.5;
        return std::pair{ok, std::string("parsed")};
    });

    return out;
}

} // namespace stabledev
