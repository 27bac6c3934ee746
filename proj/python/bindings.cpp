#include "stabledev/cli.hpp"
#include "stabledev/constants.hpp"
#include "stabledev/girsanov_tilt.hpp"
#include "stabledev/lil_harness.hpp"
#include "stabledev/parallel.hpp"
#include "stabledev/path_sim.hpp"
#include "stabledev/selftest.hpp"
#include "stabledev/smallball_mc.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

namespace py = pybind11;
using namespace stabledev;

namespace {

std::unique_ptr<BatchRunner> runner_for(std::size_t workers) {
    if (workers == 1) return std::make_unique<SerialRunner>();
    return std::make_unique<ThreadPoolRunner>(workers);
}

py::dict path_dict(const SimPath& p) {
    py::dict d;
    d["times"] = p.times;
    d["values"] = p.values;
    py::list jumps;
    for (const auto& j : p.jumps) jumps.append(py::make_tuple(j.time, j.size));
    d["jumps"] = jumps;
    d["eps_cutoff"] = p.eps_cutoff;
    d["small_jump_variance"] = p.small_jump_variance;
    d["mode"] = p.mode == PathMode::increment ? "increment" : "jump_resolved";
    return d;
}

SimPath path_from(const py::dict& d) {
    SimPath p;
    p.times = d["times"].cast<std::vector<double>>();
    p.values = d["values"].cast<std::vector<double>>();
    if (d.contains("jumps")) {
        for (auto item : d["jumps"]) {
            auto t = item.cast<std::pair<double, double>>();
            p.jumps.push_back({t.first, t.second});
        }
    }
    if (d.contains("mode") && d["mode"].cast<std::string>() == "jump_resolved") p.mode = PathMode::jump_resolved;
    return p;
}

py::dict result_dict(const SmallBallResult& r) {
    py::dict d;
    d["estimate"] = r.estimate;
    d["ess"] = r.ess;
    d["hits"] = r.hits;
    d["flag"] = r.flag;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "C++ core of the stabledev toolkit";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<AlphaStableParams>(m, "AlphaStableParams")
        .def(py::init(&AlphaStableParams::make), py::arg("alpha"))
        .def_property_readonly("alpha", &AlphaStableParams::alpha)
        .def_property_readonly("c_alpha", &AlphaStableParams::c_alpha)
        .def("tail_mass", &AlphaStableParams::tail_mass)
        .def("small_jump_variance", &AlphaStableParams::small_jump_variance);

    py::class_<ShiftFunction>(m, "ShiftFunction")
        .def_static("make",
                    [](const std::vector<std::pair<double, double>>& knots) {
                        std::vector<Knot> k;
                        for (const auto& [t, v] : knots) k.push_back({t, v});
                        return ShiftFunction::make(std::move(k));
                    })
        .def_static("zero", &ShiftFunction::zero)
        .def_static("identity", &ShiftFunction::identity)
        .def_static("tent", &ShiftFunction::tent)
        .def_static("random_piecewise", &ShiftFunction::random_piecewise, py::arg("n_knots"), py::arg("max_slope"),
                    py::arg("seed"))
        .def_static("from_json", &ShiftFunction::from_json)
        .def("to_json", &ShiftFunction::to_json)
        .def("__call__", &ShiftFunction::operator())
        .def_property_readonly("sup_deriv", &ShiftFunction::sup_deriv)
        .def_property_readonly("l2_deriv", &ShiftFunction::l2_deriv);

    py::class_<Estimate>(m, "Estimate")
        .def_readonly("value", &Estimate::value)
        .def_readonly("std_error", &Estimate::std_error)
        .def_readonly("n", &Estimate::n)
        .def_readonly("ci_lo", &Estimate::ci_lo)
        .def_readonly("ci_hi", &Estimate::ci_hi)
        .def("__repr__", [](const Estimate& e) {
            std::ostringstream os;
            os << "Estimate(" << e.value << " +- " << e.std_error << ", n=" << e.n << ")";
            return os.str();
        });

    py::class_<TiltSpec>(m, "TiltSpec")
        .def_static("middle_shift", &TiltSpec::middle_shift, py::arg("params"), py::arg("f"), py::arg("c"), py::arg("r"))
        .def_static("small_shift", &TiltSpec::small_shift, py::arg("params"), py::arg("f"), py::arg("lam"), py::arg("r"),
                    py::arg("rho") = py::none())
        .def_property_readonly("amplitude", &TiltSpec::amplitude)
        .def_property_readonly("jump_cut", &TiltSpec::jump_cut)
        .def_property_readonly("rho", &TiltSpec::rho)
        .def("to_config", &TiltSpec::to_config)
        .def_static("from_config", &TiltSpec::from_config);

    py::class_<SmallBallQuery>(m, "SmallBallQuery")
        .def_static("make",
                    [](const AlphaStableParams& p, const ShiftFunction& f, double lam, double r, const std::string& regime) {
                        return SmallBallQuery::make(p, f, lam, r, parse_regime(regime));
                    },
                    py::arg("params"), py::arg("f"), py::arg("lam"), py::arg("r"), py::arg("regime") = "small")
        .def_static("middle", &SmallBallQuery::middle, py::arg("params"), py::arg("f"), py::arg("c"), py::arg("r"))
        .def_static("centered", &SmallBallQuery::centered, py::arg("params"), py::arg("r"))
        .def_readonly("shift_scale", &SmallBallQuery::shift_scale)
        .def_readonly("r", &SmallBallQuery::r)
        .def_readonly("c", &SmallBallQuery::c);

    m.def("psi", &psi);
    m.def("c_alpha_symbol", &c_alpha_symbol);
    m.def("series_C_alpha", &series_C_alpha);
    m.def("series_C1", &series_C1);
    m.def(
        "estimate_K_alpha_spectral",
        [](double alpha, int n_grid, bool gaussian_mode) {
            SpectralOptions opt;
            opt.gaussian_mode = gaussian_mode;
            const KAlphaResult r = estimate_K_alpha_spectral(alpha, n_grid, opt);
            py::dict d;
            d["value"] = r.value;
            d["diagnostics"] = r.diagnostics;
            return d;
        },
        py::arg("alpha"), py::arg("n_grid") = 512, py::arg("gaussian_mode") = false);

    m.def(
        "sample_stable_path",
        [](const AlphaStableParams& p, std::size_t n_steps, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng(seed, stream);
            return path_dict(sample_stable_path(p, n_steps, rng));
        },
        py::arg("params"), py::arg("n_steps"), py::arg("seed"), py::arg("stream") = 0);
    m.def(
        "sample_jump_path",
        [](const AlphaStableParams& p, double eps, bool gaussian, std::size_t n_steps, std::uint64_t seed,
           std::uint64_t stream) {
            RngStream rng(seed, stream);
            return path_dict(sample_jump_path(p, eps, gaussian, n_steps, rng));
        },
        py::arg("params"), py::arg("eps"), py::arg("gaussian") = true, py::arg("n_steps") = 256, py::arg("seed") = 1,
        py::arg("stream") = 0);
    m.def(
        "sample_tilted_path",
        [](const TiltSpec& t, std::size_t n_steps, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng(seed, stream);
            const TiltedSample s = sample_tilted_path(t, n_steps, rng);
            py::dict d = path_dict(s.path);
            d["log_weight"] = s.log_weight;
            return d;
        },
        py::arg("tilt"), py::arg("n_steps"), py::arg("seed"), py::arg("stream") = 0);
    m.def(
        "sup_distance", [](const py::dict& path, const ShiftFunction& f, double lam) { return sup_distance(path_from(path), f, lam); },
        py::arg("path"), py::arg("f"), py::arg("lam"));

    m.def("validity_check", [](const TiltSpec& t) {
        const Validity v = validity_check(t);
        return py::make_tuple(v.pass, v.margin);
    });
    m.def("deterministic_exponent", &deterministic_exponent);
    m.def("deterministic_exponent_quadrature", &deterministic_exponent_quadrature);

    m.def("prob_no_big_jumps", &prob_no_big_jumps, py::arg("alpha"), py::arg("r"));
    m.def(
        "estimate_crude",
        [](const SmallBallQuery& q, std::size_t n, std::size_t steps, std::uint64_t seed, std::size_t workers) {
            auto runner = runner_for(workers);
            py::gil_scoped_release release;
            const SmallBallResult r = estimate_crude(q, n, steps, seed, *runner);
            py::gil_scoped_acquire acquire;
            return result_dict(r);
        },
        py::arg("query"), py::arg("n"), py::arg("steps"), py::arg("seed"), py::arg("workers") = 1);
    m.def(
        "estimate_is",
        [](const SmallBallQuery& q, std::size_t n, std::size_t steps, std::uint64_t seed, std::size_t workers) {
            auto runner = runner_for(workers);
            py::gil_scoped_release release;
            const SmallBallResult r = estimate_is(q, n, steps, seed, *runner);
            py::gil_scoped_acquire acquire;
            return result_dict(r);
        },
        py::arg("query"), py::arg("n"), py::arg("steps"), py::arg("seed"), py::arg("workers") = 1);

    m.def("lemma2_ratios", [](long k, double delta, double alpha) {
        const Lemma2Ratios r = lemma2_ratios(k, delta, alpha);
        return py::make_tuple(r.r1, r.r2, r.r3);
    });
    m.def(
        "integral_test",
        [](double log_power, double loglog_power, double alpha) {
            return to_string(integral_test(ScalingFunction::power_loglog(log_power, loglog_power), alpha).classification);
        },
        py::arg("log_power"), py::arg("loglog_power"), py::arg("alpha"));

    m.def("selftest", [] {
        py::list out;
        for (const auto& item : run_selftest()) out.append(py::make_tuple(item.name, item.pass, item.detail));
        return out;
    });
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream o, e;
            const int code = run_cli(args, o, e);
            return py::make_tuple(code, o.str(), e.str());
        },
        py::arg("args"));
}
