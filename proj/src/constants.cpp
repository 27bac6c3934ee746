#include "stabledev/constants.hpp"

#include "stabledev/path_sim.hpp"
#include "stabledev/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace stabledev {

double psi(double u) {
    if (!(u > -1.0)) throw std::domain_error("psi: argument must exceed -1");
    if (std::abs(u) < 1e-4) {
        const double u2 = u * u;
        return u2 / 2.0 - u2 * u / 6.0 + u2 * u2 / 12.0 - u2 * u2 * u / 20.0;
    }
    return (1.0 + u) * std::log1p(u) - u;
}

double c_alpha_symbol(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("c_alpha_symbol: alpha must lie in (1,2)");
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double two_pi = 2.0 * std::numbers::pi;

    // [0,1]: subtract v^2/2, whose integral against v^{-1-alpha} is 1/(2(2-alpha)).
    auto remainder = [alpha](double v) {
        if (v == 0.0) return 0.0;
        double g;
        if (v < 1e-2) {
            const double v2 = v * v;
            g = v2 * v2 * (-1.0 / 24.0 + v2 / 720.0 - v2 * v2 / 40320.0);
        } else {
            const double s = std::sin(v / 2.0);
            g = 2.0 * s * s - v * v / 2.0;
        }
        return g * std::pow(v, -1.0 - alpha);
    };
    double total = 1.0 / (2.0 * (2.0 - alpha)) + GK::integrate(remainder, 0.0, 1.0, 15, 1e-14);

    auto body = [alpha](double v) {
        const double s = std::sin(v / 2.0);
        return 2.0 * s * s * std::pow(v, -1.0 - alpha);
    };
    constexpr int periods = 50;
    total += GK::integrate(body, 1.0, two_pi, 15, 1e-14);
    for (int k = 1; k < periods; ++k) total += GK::integrate(body, two_pi * k, two_pi * (k + 1), 15, 1e-14);

    // Tail from V = 2 pi M: int v^{-1-alpha} minus the cosine part, whose repeated
    // integration by parts gives sum_j (-1)^j (beta)_{2j+1} V^{-beta-2j-1}.
    const double V = two_pi * periods;
    const double beta = 1.0 + alpha;
    double cos_tail = 0.0;
    double coeff = beta;
    double vpow = std::pow(V, -beta - 1.0);
    for (int j = 0; j < 8; ++j) {
        cos_tail += (j % 2 == 0 ? 1.0 : -1.0) * coeff * vpow;
        coeff *= (beta + 2.0 * j + 1.0) * (beta + 2.0 * j + 2.0);
        vpow /= V * V;
    }
    total += std::pow(V, -alpha) / alpha - cos_tail;
    return 2.0 * total;
}

// ---------------------------------------------------------------------------
// Spectral K_alpha

namespace {

Eigen::MatrixXd generator_matrix(double alpha, int n_intervals, const SpectralOptions& opt) {
    const int n = n_intervals - 1;
    const double h = 2.0 * opt.half_width / n_intervals;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    if (opt.gaussian_mode) {
        const double d = 1.0 / (2.0 * h * h);
        for (int i = 0; i < n; ++i) {
            A(i, i) = 2.0 * d;
            if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = -d;
        }
        return A;
    }
    // Fractional centered differences: g_k = (-1)^k Gamma(alpha+1) / (Gamma(alpha/2-k+1) Gamma(alpha/2+k+1)).
    std::vector<double> g(static_cast<std::size_t>(n));
    g[0] = boost::math::tgamma(alpha + 1.0) / std::pow(boost::math::tgamma(alpha / 2.0 + 1.0), 2);
    for (int k = 1; k < n; ++k) g[k] = g[k - 1] * (k - 1.0 - alpha / 2.0) / (alpha / 2.0 + k);
    const double scale = c_alpha_symbol(alpha) * std::pow(h, -alpha);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = scale * g[static_cast<std::size_t>(std::abs(i - j))];
    return A;
}

} // namespace

EigenPair dirichlet_ground_state(double alpha, int n_intervals, const SpectralOptions& opt) {
    if (!opt.gaussian_mode && !(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("spectral: alpha must lie in (1,2)");
    if (n_intervals < 4) throw std::invalid_argument("spectral: need at least 4 grid cells");
    if (!(opt.half_width > 0.0)) throw std::invalid_argument("spectral: half_width must be positive");
    const Eigen::MatrixXd A = generator_matrix(alpha, n_intervals, opt);
    const Eigen::LDLT<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success) throw std::runtime_error("spectral: factorization failed");

    Eigen::VectorXd x = Eigen::VectorXd::Ones(A.rows()).normalized();
    double lambda = x.dot(A * x);
    for (int it = 1; it <= opt.max_iterations; ++it) {
        x = solver.solve(x).normalized();
        const double next = x.dot(A * x);
        if (std::abs(next - lambda) <= opt.tolerance * std::abs(next)) {
            EigenPair out;
            out.value = next;
            out.iterations = it;
            if (x.sum() < 0.0) x = -x;
            out.vector.assign(x.data(), x.data() + x.size());
            return out;
        }
        lambda = next;
    }
    throw std::runtime_error("spectral: inverse power iteration hit the iteration cap");
}

KAlphaResult estimate_K_alpha_spectral(double alpha, int n_grid, const SpectralOptions& opt) {
    if (n_grid < 64) throw std::invalid_argument("estimate_K_alpha_spectral: n_grid must be at least 64");
    const EigenPair coarse = dirichlet_ground_state(alpha, n_grid, opt);
    const EigenPair fine = dirichlet_ground_state(alpha, 2 * n_grid, opt);
    const double order = opt.gaussian_mode ? 2.0 : 1.0;
    const double factor = std::pow(2.0, order);

    KAlphaResult res;
    res.alpha = alpha;
    res.method = KMethod::spectral;
    res.value = (factor * fine.value - coarse.value) / (factor - 1.0);
    const auto positive = [](const EigenPair& e) {
        return std::all_of(e.vector.begin(), e.vector.end(), [](double v) { return v > 0.0; });
    };
    res.diagnostics = {
        {"grid_coarse", n_grid},
        {"grid_fine", 2.0 * n_grid},
        {"eigenvalue_coarse", coarse.value},
        {"eigenvalue_fine", fine.value},
        {"richardson_order", order},
        {"iterations_fine", fine.iterations},
        {"eigenvector_positive", positive(coarse) && positive(fine) ? 1.0 : 0.0},
        {"half_width", opt.half_width},
    };
    if (!(res.value > 0.0)) throw std::runtime_error("spectral: extrapolated eigenvalue is not positive");
    return res;
}

// ---------------------------------------------------------------------------
// MC K_alpha

KAlphaResult fit_K_alpha(double alpha, const std::vector<double>& r_list, const std::vector<double>& sup_norms) {
    if (sup_norms.empty()) throw std::invalid_argument("fit_K_alpha: no samples");
    KAlphaResult res;
    res.alpha = alpha;
    res.method = KMethod::mc_fit;
    std::vector<double> x, y, w, lx, ly, lw;
    const std::size_t n = sup_norms.size();
    for (double r : r_list) {
        if (!(r > 0.0)) throw std::invalid_argument("fit_K_alpha: radii must be positive");
        const auto hits = static_cast<std::size_t>(
            std::count_if(sup_norms.begin(), sup_norms.end(), [r](double s) { return s < r; }));
        const Estimate e = Estimate::from_bernoulli(hits, n);
        if (hits == 0 || hits == n) {
            res.dropped_radii.push_back(r);
            continue;
        }
        res.radii.push_back(r);
        res.p_hat.push_back(e);
        const double p = e.value;
        const double nl = -std::log(p);
        // delta method: var(-log p) ~ (1-p) / (n p)
        const double info = static_cast<double>(n) * p / (1.0 - p);
        x.push_back(std::pow(r, -alpha));
        y.push_back(nl);
        w.push_back(info);
        lx.push_back(std::log(r));
        ly.push_back(std::log(nl));
        lw.push_back(info * nl * nl);
    }
    if (x.size() < 2) throw std::runtime_error("fit_K_alpha: fewer than two resolvable radii");
    const LinearFit fit = linear_fit(x, y, w);
    const LinearFit free = linear_fit(lx, ly, lw);
    res.value = fit.slope;
    res.diagnostics = {
        {"slope_se", fit.slope_se},
        {"intercept", fit.intercept},
        {"free_slope", free.slope},
        {"free_slope_se", free.slope_se},
        {"n_paths", static_cast<double>(n)},
        {"points_used", static_cast<double>(x.size())},
    };
    return res;
}

KAlphaResult estimate_K_alpha_mc(double alpha, const std::vector<double>& r_list, std::size_t n_paths,
                                 std::size_t n_steps, std::uint64_t seed, const BatchRunner& runner) {
    const auto params = AlphaStableParams::make(alpha);
    return fit_K_alpha(alpha, r_list, sample_sup_norms(params, n_paths, n_steps, seed, runner));
}

// ---------------------------------------------------------------------------
// Series constants

namespace {

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

constexpr double kSeriesTol = 1e-12;
constexpr long kMaxTerms = 100'000'000;

} // namespace

SeriesResult series_C_alpha_detail(double alpha, long n_terms) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("series_C_alpha: alpha must lie in (1,2)");
    // For k >= 2 the term is at most 1/(8 (k-1)^3), so the tail after K terms is
    // at most 1/(8K^3) + 1/(16K^2).
    auto bound = [](long K) {
        const double k = static_cast<double>(K);
        return 1.0 / (8.0 * k * k * k) + 1.0 / (16.0 * k * k);
    };
    Kahan acc;
    long k = 1;
    for (; k <= kMaxTerms; ++k) {
        const double kk = 2.0 * static_cast<double>(k);
        acc.add(1.0 / (kk * (kk - 1.0) * (kk - alpha)));
        if (n_terms > 0 ? k >= n_terms : bound(k) < kSeriesTol * acc.sum) break;
    }
    SeriesResult res;
    res.terms = std::min(k, kMaxTerms);
    res.partial_sum = acc.sum;
    res.tail_bound = bound(res.terms);
    const double gauss = 24.0 * std::pow(6.0, alpha) * (1.0 / (2.0 - alpha) + (std::pow(2.0, alpha - 1.0) - 1.0) / (6.0 * (3.0 - alpha)));
    res.value = 2.0 * (1.0 / alpha + acc.sum + gauss);
    return res;
}

double series_C_alpha(double alpha) { return series_C_alpha_detail(alpha).value; }

SeriesResult series_C1_detail(const ShiftFunction& f, double alpha, long n_terms) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("series_C1: alpha must lie in (1,2)");
    SeriesResult res;
    const double norm = f.sup_deriv();
    if (norm == 0.0) return res;

    const auto& slopes = f.slopes();
    const auto& knots = f.knots();
    std::vector<double> sq(slopes.size());
    std::vector<double> power(slopes.size());
    for (std::size_t s = 0; s < slopes.size(); ++s) {
        sq[s] = std::pow(slopes[s] / norm, 2);
        power[s] = knots[s + 1].t - knots[s].t;
    }
    // m_2k is nonincreasing, so the tail is at most m_2K (1/(4K^3) + 1/(8K^2)).
    auto bound = [](long K, double m) {
        const double k = static_cast<double>(K);
        return m * (1.0 / (4.0 * k * k * k) + 1.0 / (8.0 * k * k));
    };
    Kahan acc;
    long k = 1;
    double moment = 0.0;
    for (; k <= kMaxTerms; ++k) {
        moment = 0.0;
        for (std::size_t s = 0; s < sq.size(); ++s) {
            power[s] *= sq[s];
            moment += power[s];
        }
        const double kd = static_cast<double>(k);
        acc.add(moment / (kd * (2.0 * kd - 1.0) * (2.0 * kd - alpha)));
        if (n_terms > 0 ? k >= n_terms : bound(k, moment) < kSeriesTol * acc.sum) break;
    }
    res.terms = std::min(k, kMaxTerms);
    res.partial_sum = acc.sum;
    res.tail_bound = bound(res.terms, moment);
    res.value = std::pow(norm * (2.0 - alpha) / 2.0, alpha / (alpha - 1.0)) * acc.sum;
    return res;
}

double series_C1(const ShiftFunction& f, double alpha) { return series_C1_detail(f, alpha).value; }

double ad_martingale_bound(double second_moment, double eps) {
    if (!(second_moment >= 0.0)) throw std::invalid_argument("ad_martingale_bound: second moment must be nonnegative");
    if (!(eps > 0.0)) throw std::invalid_argument("ad_martingale_bound: eps must be positive");
    return std::exp(-(12.0 * second_moment / (eps * eps) + 2.0));
}

double ad_large_shift_rate(double lambda, double r, double alpha) {
    if (!(lambda > 0.0 && r > 0.0)) throw std::invalid_argument("ad_large_shift_rate: lambda and r must be positive");
    return lambda / r * std::log(lambda * std::pow(r, alpha - 1.0));
}

std::string to_string(KMethod m) { return m == KMethod::spectral ? "spectral" : "mc_fit"; }

} // namespace stabledev
