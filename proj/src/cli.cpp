#include "stabledev/cli.hpp"

#include "stabledev/config.hpp"
#include "stabledev/constants.hpp"
#include "stabledev/lil_harness.hpp"
#include "stabledev/parallel.hpp"
#include "stabledev/path_sim.hpp"
#include "stabledev/selftest.hpp"
#include "stabledev/smallball_mc.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace stabledev {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "alpha", "seed", "workers", "n", "steps", "out",
    "simulate.mode", "simulate.r", "simulate.eps",
    "smallball.r", "smallball.lambda", "smallball.c", "smallball.shift", "smallball.regime",
    "smallball.x", "smallball.x_unit", "smallball.eps",
    "constants.alphas", "constants.n_grid", "constants.mc", "constants.r_list",
    "lil.grid", "lil.gamma", "lil.k_min", "lil.k_max", "lil.k", "lil.delta", "lil.shift",
    "lil.log_power", "lil.loglog_power",
};

// Keys that never change the numbers and are therefore kept out of the echoed
// config, so that runs with different worker counts produce identical bytes.
const std::set<std::string> kNotEchoed = {"workers", "out"};

struct Flags {
    std::map<std::string, std::string> store;
    std::vector<std::pair<CLI::Option*, std::string>> bound;

    void bind(CLI::App* app, const std::string& name, const std::string& key, const std::string& help) {
        bound.emplace_back(app->add_option(name, store[key], help), key);
    }
    void apply(Config& cfg) const {
        for (const auto& [opt, key] : bound)
            if (opt->count() > 0) cfg.set(key, store.at(key));
    }
};

json echo(const Config& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.values())
        if (!kNotEchoed.count(k)) j[k] = v;
    return j;
}

std::string echo_comment(const Config& cfg) {
    std::ostringstream os;
    for (const auto& [k, v] : cfg.values())
        if (!kNotEchoed.count(k)) os << "# " << k << " = " << v << '\n';
    return os.str();
}

json estimate_json(const Estimate& e) {
    return {{"value", e.value},
            {"stderr", e.std_error},
            {"ci95", {e.ci_lo, e.ci_hi}},
            {"n", e.n},
            {"interval", e.interval == IntervalKind::normal ? "normal" : "clopper_pearson"}};
}

ShiftFunction parse_shift(const std::string& spec) {
    if (spec == "zero") return ShiftFunction::zero();
    if (spec == "id") return ShiftFunction::identity();
    if (spec == "tent") return ShiftFunction::tent();
    if (spec == "random8") return ShiftFunction::random_piecewise(8, 1.0, 2024);
    if (!spec.empty() && spec.front() == '@') {
        std::ifstream f(spec.substr(1));
        if (!f) throw ConfigError("cannot open shift file '" + spec.substr(1) + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        return ShiftFunction::from_json(ss.str());
    }
    return ShiftFunction::from_json(spec);
}

ShiftFunction shift_from(const Config& cfg, const std::string& key) {
    try {
        return parse_shift(cfg.get_string(key));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

// Writes to <dir>/<name> when an output directory is configured, else to `out`.
class Sink {
public:
    Sink(const Config& cfg, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
        if (cfg.has("out")) dir_ = cfg.get_string("out");
    }
    void write(const std::string& name, const std::string& body) {
        if (dir_.empty()) {
            out_ << body;
            return;
        }
        std::filesystem::create_directories(dir_);
        const auto path = std::filesystem::path(dir_) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("cannot write output file '" + path.string() + "'");
        f << body;
        err_ << "wrote " << path.string() << '\n';
    }

private:
    std::ostream& out_;
    std::ostream& err_;
    std::string dir_;
};

std::unique_ptr<BatchRunner> make_runner(const Config& cfg) {
    const long w = cfg.get_long("workers");
    if (w < 0) throw ConfigError("config key 'workers': must be nonnegative");
    if (w == 1) return std::make_unique<SerialRunner>();
    return std::make_unique<ThreadPoolRunner>(static_cast<std::size_t>(w));
}

std::size_t positive_count(const Config& cfg, const std::string& key) {
    const long v = cfg.get_long(key);
    if (v < 1) throw ConfigError("config key '" + key + "': must be at least 1");
    return static_cast<std::size_t>(v);
}

AlphaStableParams params_from(const Config& cfg) {
    try {
        return AlphaStableParams::make(cfg.get_double("alpha"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config key 'alpha': ") + e.what());
    }
}

std::string dump_line(const json& j) { return j.dump() + '\n'; }

// ---------------------------------------------------------------------------

int cmd_simulate(const Config& cfg, Sink& sink) {
    const auto params = params_from(cfg);
    const std::size_t n = positive_count(cfg, "n");
    const std::size_t steps = positive_count(cfg, "steps");
    const std::string mode = cfg.get_string("simulate.mode");
    const std::uint64_t seed = cfg.get_uint64("seed");
    if (mode != "increment" && mode != "jump" && mode != "truncated") {
        throw ConfigError("config key 'simulate.mode': expected increment, jump or truncated, got '" + mode + "'");
    }
    std::vector<SimPath> paths(n);
    make_runner(cfg)->run(n, [&](std::size_t i) {
        RngStream rng(seed, i);
        if (mode == "increment") paths[i] = sample_stable_path(params, steps, rng);
        else if (mode == "jump") paths[i] = sample_jump_path(params, cfg.get_double("simulate.eps"), true, steps, rng);
        else paths[i] = sample_truncated_path(params, cfg.get_double("simulate.r"), steps, rng, cfg.get_double("simulate.eps"));
    });
    std::ostringstream csv, jumps;
    csv.precision(17);
    jumps.precision(17);
    csv << echo_comment(cfg) << (n == 1 ? "t,x\n" : "path,t,x\n");
    jumps << echo_comment(cfg) << (n == 1 ? "t,size\n" : "path,t,size\n");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < paths[i].times.size(); ++s) {
            if (n > 1) csv << i << ',';
            csv << paths[i].times[s] << ',' << paths[i].values[s] << '\n';
        }
        for (const auto& j : paths[i].jumps) {
            if (n > 1) jumps << i << ',';
            jumps << j.time << ',' << j.size << '\n';
        }
    }
    sink.write("paths.csv", csv.str());
    if (mode != "increment") sink.write("jumps.csv", jumps.str());
    return 0;
}

SmallBallQuery query_from(const Config& cfg) {
    const auto params = params_from(cfg);
    const ShiftFunction f = shift_from(cfg, "smallball.shift");
    const double r = cfg.get_double("smallball.r");
    const ShiftRegime regime = [&] {
        try {
            return parse_regime(cfg.get_string("smallball.regime"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config key 'smallball.regime': ") + e.what());
        }
    }();
    if (regime == ShiftRegime::middle) return SmallBallQuery::middle(params, f, cfg.get_double("smallball.c"), r);
    return SmallBallQuery::make(params, f, cfg.get_double("smallball.lambda"), r, regime);
}

json query_json(const SmallBallQuery& q) {
    return {{"alpha", q.params.alpha()}, {"r", q.r},           {"lambda", q.shift_scale},
            {"c", q.c},                  {"regime", to_string(q.regime)}, {"shift", json::parse(q.f.to_json())}};
}

json result_json(const SmallBallResult& res) {
    json j = estimate_json(res.estimate);
    j["ess"] = res.ess;
    j["hits"] = res.hits;
    if (!res.flag.empty()) j["flag"] = res.flag;
    return j;
}

int cmd_crude(const Config& cfg, Sink& sink) {
    const SmallBallQuery q = query_from(cfg);
    const auto res = estimate_crude(q, positive_count(cfg, "n"), positive_count(cfg, "steps"), cfg.get_uint64("seed"),
                                    *make_runner(cfg));
    json j = {{"query", query_json(q)}, {"estimate", result_json(res)}, {"config", echo(cfg)}};
    sink.write("smallball_crude.json", dump_line(j));
    return 0;
}

int cmd_is(const Config& cfg, Sink& sink) {
    Config c = cfg;
    c.set("smallball.regime", "middle");
    const SmallBallQuery q = query_from(c);
    const auto res = estimate_is(q, positive_count(c, "n"), positive_count(c, "steps"), c.get_uint64("seed"),
                                 *make_runner(c), c.get_double("smallball.eps") > 0.0
                                                      ? std::optional<double>(c.get_double("smallball.eps"))
                                                      : std::nullopt);
    json j = {{"query", query_json(q)},
              {"estimate", result_json(res)},
              {"prob_no_big_jumps", prob_no_big_jumps(q.params.alpha(), q.r)},
              {"config", echo(c)}};
    try {
        j["theory_lower_bound"] = theory_lower_bound_middle(q);
    } catch (const std::invalid_argument& e) {
        j["theory_lower_bound"] = nullptr;
        j["theory_lower_bound_note"] = e.what();
    }
    sink.write("smallball_is.json", dump_line(j));
    return 0;
}

int cmd_anderson(const Config& cfg, Sink& sink) {
    const auto params = params_from(cfg);
    const double r = cfg.get_double("smallball.r");
    const auto rep = anderson_report(default_anderson_battery(), params, r, positive_count(cfg, "n"),
                                     positive_count(cfg, "steps"), cfg.get_uint64("seed"), *make_runner(cfg));
    json rows = json::array();
    for (const auto& row : rep.rows) {
        rows.push_back({{"shift", row.label}, {"lambda", row.lambda}, {"estimate", estimate_json(row.estimate)},
                        {"flagged", row.flagged}});
    }
    json j = {{"alpha", params.alpha()}, {"r", r}, {"baseline", estimate_json(rep.baseline)},
              {"rows", rows},            {"flags", rep.flags}, {"config", echo(cfg)}};
    sink.write("smallball_anderson.json", dump_line(j));
    return rep.flags == 0 ? 0 : 1;
}

int cmd_tail(const Config& cfg, Sink& sink) {
    const auto params = params_from(cfg);
    std::vector<double> xs = cfg.get_doubles("smallball.x");
    const std::string unit = cfg.get_string("smallball.x_unit");
    if (unit == "process") {
        for (double& x : xs) x *= std::pow(params.c_alpha(), 1.0 / params.alpha());
    } else if (unit != "raw") {
        throw ConfigError("config key 'smallball.x_unit': expected raw or process, got '" + unit + "'");
    }
    const TailReport rep = tail_prob_check(params, xs, positive_count(cfg, "n"), positive_count(cfg, "steps"),
                                           cfg.get_uint64("seed"), *make_runner(cfg));
    json pts = json::array();
    for (std::size_t i = 0; i < rep.x.size(); ++i) pts.push_back({{"x", rep.x[i]}, {"p_hat", estimate_json(rep.p_hat[i])}});
    json j = {{"alpha", params.alpha()},
              {"points", pts},
              {"slope", rep.slope},
              {"slope_stderr", rep.slope_se},
              {"slope_ci95", {rep.slope_ci_lo, rep.slope_ci_hi}},
              {"scaled_ratio", rep.scaled_ratio},
              {"monotone", rep.monotone},
              {"config", echo(cfg)}};
    sink.write("smallball_tail.json", dump_line(j));
    return 0;
}

int cmd_constants(const Config& cfg, Sink& sink) {
    const std::vector<double> alphas =
        cfg.has("constants.alphas") ? cfg.get_doubles("constants.alphas") : std::vector<double>{cfg.get_double("alpha")};
    const long n_grid = cfg.get_long("constants.n_grid");
    const bool mc = cfg.get_bool("constants.mc");
    auto runner = make_runner(cfg);
    std::ostringstream lines;
    for (double a : alphas) {
        Config c = cfg;
        c.set("alpha", json(a).dump());
        const auto params = params_from(c);
        const KAlphaResult ks = estimate_K_alpha_spectral(a, static_cast<int>(n_grid));
        json j = {{"alpha", a},
                  {"c_alpha", params.c_alpha()},
                  {"K_spectral", ks.value},
                  {"K_spectral_diagnostics", ks.diagnostics},
                  {"C_alpha", series_C_alpha(a)}};
        if (mc) {
            try {
                const KAlphaResult km = estimate_K_alpha_mc(a, cfg.get_doubles("constants.r_list"), positive_count(cfg, "n"),
                                                            positive_count(cfg, "steps"), cfg.get_uint64("seed"), *runner);
                j["K_mc"] = km.value;
                j["K_mc_diagnostics"] = km.diagnostics;
                j["K_mc_dropped_radii"] = km.dropped_radii;
            } catch (const std::runtime_error& e) {
                j["K_mc"] = nullptr;
                j["K_mc_note"] = e.what();
            }
        } else {
            j["K_mc"] = nullptr;
        }
        j["config"] = echo(cfg);
        lines << dump_line(j);
    }
    sink.write("constants.json", lines.str());
    return 0;
}

GridSpec grid_from(const Config& cfg) {
    GridSpec g;
    const std::string kind = cfg.get_string("lil.grid");
    if (kind == "lower") g.kind = GridKind::lower;
    else if (kind == "upper") g.kind = GridKind::upper;
    else throw ConfigError("config key 'lil.grid': expected lower or upper, got '" + kind + "'");
    g.gamma = cfg.get_double("lil.gamma");
    g.k_min = cfg.get_long("lil.k_min");
    g.k_max = cfg.get_long("lil.k_max");
    return g;
}

int cmd_lil_grid(const Config& cfg, Sink& sink) {
    const GridSpec g = grid_from(cfg);
    std::vector<double> logs;
    try {
        logs = grid_log_times(g);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("lil grid: ") + e.what());
    }
    std::ostringstream csv;
    csv.precision(17);
    csv << echo_comment(cfg) << "k,logT\n";
    for (std::size_t i = 0; i < logs.size(); ++i) csv << g.k_min + static_cast<long>(i) << ',' << logs[i] << '\n';
    sink.write("lil_grid.csv", csv.str());
    return 0;
}

int cmd_lil_ratios(const Config& cfg, Sink& sink) {
    const double alpha = params_from(cfg).alpha();
    const double delta = cfg.get_double("lil.delta");
    std::ostringstream lines;
    for (double kd : cfg.get_doubles("lil.k")) {
        const long k = static_cast<long>(kd);
        const Lemma2Ratios r = lemma2_ratios(k, delta, alpha);
        lines << dump_line({{"k", k}, {"delta", delta}, {"alpha", alpha}, {"r1", r.r1}, {"r2", r.r2}, {"r3", r.r3},
                            {"config", echo(cfg)}});
    }
    sink.write("lil_ratios.json", lines.str());
    return 0;
}

int cmd_lil_sweep(const Config& cfg, Sink& sink) {
    const auto params = params_from(cfg);
    const LiminfTrace tr = distance_sweep(params, grid_from(cfg), cfg.get_double("lil.delta"), shift_from(cfg, "lil.shift"),
                                          positive_count(cfg, "steps"), cfg.get_uint64("seed"), *make_runner(cfg));
    std::ostringstream csv;
    csv.precision(17);
    csv << "# " << tr.note << '\n' << echo_comment(cfg) << "k,logT,delta,distance,running_min\n";
    for (const auto& r : tr.records) {
        csv << r.k << ',' << r.log_T << ',' << r.delta << ',' << r.distance << ',' << r.running_min << '\n';
    }
    sink.write("lil_distance_sweep.csv", csv.str());
    return 0;
}

int cmd_lil_integral(const Config& cfg, Sink& sink) {
    const double alpha = params_from(cfg).alpha();
    const auto h = ScalingFunction::power_loglog(cfg.get_double("lil.log_power"), cfg.get_double("lil.loglog_power"));
    const IntegralTestResult res = integral_test(h, alpha);
    json j = {{"h", h.label},
              {"alpha", alpha},
              {"classification", to_string(res.classification)},
              {"evidence", res.evidence},
              {"config", echo(cfg)}};
    sink.write("lil_integral_test.json", dump_line(j));
    return 0;
}

int cmd_selftest(std::ostream& out) {
    int failures = 0;
    for (const auto& item : run_selftest()) {
        out << (item.pass ? "PASS " : "FAIL ") << item.name << " (" << item.detail << ")\n";
        failures += item.pass ? 0 : 1;
    }
    out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 1;
}

// Top-level keys plus the subcommand's own section.
Config relevant_keys(const Config& cfg, const std::string& section) {
    Config out;
    for (const auto& [k, v] : cfg.values()) {
        const auto dot = k.find('.');
        if (dot == std::string::npos || k.compare(0, dot, section) == 0) out.set(k, v);
    }
    return out;
}

Config defaults_for(const std::string& sub) {
    Config d;
    d.set("alpha", "1.5");
    d.set("seed", "1");
    d.set("workers", "1");
    d.set("steps", "2048");
    d.set("n", sub == "simulate" ? "1" : sub == "constants" ? "20000" : "10000");
    d.set("simulate.mode", "increment");
    d.set("simulate.r", "1");
    d.set("simulate.eps", "0.02");
    d.set("smallball.r", sub == "smallball anderson" ? "1" : "0.8");
    d.set("smallball.lambda", "0");
    d.set("smallball.c", "0.2");
    d.set("smallball.shift", sub == "smallball is" ? "id" : "zero");
    d.set("smallball.regime", "small");
    d.set("smallball.x", "5,10,20,40");
    d.set("smallball.x_unit", "raw");
    d.set("smallball.eps", "0");
    d.set("constants.n_grid", "512");
    d.set("constants.mc", "true");
    d.set("constants.r_list", "0.6,0.8,1.0,1.2");
    d.set("lil.grid", "upper");
    d.set("lil.gamma", "2");
    d.set("lil.k_min", "2");
    d.set("lil.k_max", "30");
    d.set("lil.k", "1000,10000,100000,1000000");
    d.set("lil.delta", "0.5");
    d.set("lil.shift", "zero");
    d.set("lil.log_power", "0");
    d.set("lil.loglog_power", "0");
    return d;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Small-deviation toolkit for symmetric alpha-stable processes", "stabledev"};
    app.fallthrough();
    app.require_subcommand(1);
    Flags flags;
    flags.bind(&app, "--alpha", "alpha", "stability index in (1,2)");
    flags.bind(&app, "--seed", "seed", "64-bit seed");
    flags.bind(&app, "--workers", "workers", "worker threads (0 = all cores); never changes results");
    flags.bind(&app, "--n", "n", "number of paths");
    flags.bind(&app, "--steps", "steps", "grid steps per path");
    flags.bind(&app, "--out", "out", "output directory (default: stdout)");
    std::string config_path;
    app.add_option("--config", config_path, "key-value config file; flags override it");

    std::string chosen;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, const std::string& label) {
        CLI::App* sub = parent->add_subcommand(name, help);
        sub->callback([&chosen, label] { chosen = label; });
        return sub;
    };

    auto* sim = leaf(&app, "simulate", "dump sample paths as CSV", "simulate");
    flags.bind(sim, "--mode", "simulate.mode", "increment | jump | truncated");
    flags.bind(sim, "--r", "simulate.r", "truncation radius (truncated mode)");
    flags.bind(sim, "--eps", "simulate.eps", "jump cutoff (jump and truncated modes)");

    auto* sb = app.add_subcommand("smallball", "shifted small-ball estimators");
    sb->require_subcommand(1);
    auto add_query = [&](CLI::App* s) {
        flags.bind(s, "--r", "smallball.r", "ball radius");
        flags.bind(s, "--lambda", "smallball.lambda", "shift scale");
        flags.bind(s, "--c", "smallball.c", "middle-regime constant");
        flags.bind(s, "--shift", "smallball.shift", "zero | id | tent | random8 | JSON knots | @file");
        flags.bind(s, "--regime", "smallball.regime", "small | middle | large");
    };
    auto* crude = leaf(sb, "crude", "crude Monte Carlo", "smallball crude");
    add_query(crude);
    auto* is = leaf(sb, "is", "truncate-then-tilt importance sampling (middle regime)", "smallball is");
    add_query(is);
    flags.bind(is, "--eps", "smallball.eps", "jump cutoff (0 = r/50)");
    auto* anderson = leaf(sb, "anderson", "Anderson-inequality battery", "smallball anderson");
    flags.bind(anderson, "--r", "smallball.r", "ball radius");
    auto* tail = leaf(sb, "tail", "sup-norm tail exponent", "smallball tail");
    flags.bind(tail, "--x", "smallball.x", "comma-separated thresholds");
    flags.bind(tail, "--x-unit", "smallball.x_unit", "raw | process (multiply by c_alpha^{1/alpha})");

    auto* cons = leaf(&app, "constants", "c_alpha, K_alpha and C(alpha)", "constants");
    flags.bind(cons, "--alphas", "constants.alphas", "comma-separated alpha list");
    flags.bind(cons, "--n-grid", "constants.n_grid", "coarse spectral grid");
    flags.bind(cons, "--mc", "constants.mc", "also fit K_alpha by Monte Carlo (true/false)");
    flags.bind(cons, "--r-list", "constants.r_list", "radii for the Monte Carlo fit");

    auto* lil = app.add_subcommand("lil", "finite-horizon LIL diagnostics");
    lil->require_subcommand(1);
    auto add_grid = [&](CLI::App* s) {
        flags.bind(s, "--grid", "lil.grid", "lower | upper");
        flags.bind(s, "--gamma", "lil.gamma", "upper-grid exponent");
        flags.bind(s, "--k-min", "lil.k_min", "first grid index");
        flags.bind(s, "--k-max", "lil.k_max", "last grid index");
    };
    add_grid(leaf(lil, "grid", "grid points log T_k", "lil grid"));
    auto* ratios = leaf(lil, "ratios", "lower-grid ratio checks", "lil ratios");
    flags.bind(ratios, "--k", "lil.k", "comma-separated k values");
    flags.bind(ratios, "--delta", "lil.delta", "delta in [0,1]");
    auto* sweep = leaf(lil, "distance-sweep", "scaled distances and running minimum", "lil distance-sweep");
    add_grid(sweep);
    flags.bind(sweep, "--delta", "lil.delta", "delta in [0,1]");
    flags.bind(sweep, "--shift", "lil.shift", "zero | id | tent | random8 | JSON knots | @file");
    auto* integral = leaf(lil, "integral-test", "classify int dt/(t h(t)^alpha)", "lil integral-test");
    flags.bind(integral, "--log-power", "lil.log_power", "a in h = (log t)^a (log log t)^b");
    flags.bind(integral, "--loglog-power", "lil.loglog_power", "b in h = (log t)^a (log log t)^b");

    leaf(&app, "selftest", "run the invariant battery", "selftest");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (chosen == "selftest") return cmd_selftest(out);
        Config cfg = defaults_for(chosen);
        if (!config_path.empty()) {
            const Config file = Config::load(config_path);
            file.require_known(kKnownKeys);
            for (const auto& [k, v] : file.values()) cfg.set(k, v);
        }
        // precedence for the output directory: --out, then the environment, then the file
        if (const char* env = std::getenv(kOutDirEnv); env && *env) cfg.set("out", env);
        flags.apply(cfg);
        cfg = relevant_keys(cfg, chosen.substr(0, chosen.find(' ')));
        Sink sink(cfg, out, err);
        if (chosen == "simulate") return cmd_simulate(cfg, sink);
        if (chosen == "smallball crude") return cmd_crude(cfg, sink);
        if (chosen == "smallball is") return cmd_is(cfg, sink);
        if (chosen == "smallball anderson") return cmd_anderson(cfg, sink);
        if (chosen == "smallball tail") return cmd_tail(cfg, sink);
        if (chosen == "constants") return cmd_constants(cfg, sink);
        if (chosen == "lil grid") return cmd_lil_grid(cfg, sink);
        if (chosen == "lil ratios") return cmd_lil_ratios(cfg, sink);
        if (chosen == "lil distance-sweep") return cmd_lil_sweep(cfg, sink);
        if (chosen == "lil integral-test") return cmd_lil_integral(cfg, sink);
        err << "error: no subcommand selected\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace stabledev
