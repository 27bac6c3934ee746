// Numerical constants of the small-deviation theory. K_alpha has a spectral
// and a Monte Carlo estimator; the rest are closed forms or series.
#pragma once

#include "stabledev/parallel.hpp"
#include "stabledev/process_model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace stabledev {

/// (1+u) log(1+u) - u. Uses the alternating series for |u| < 1e-4.
double psi(double u);

/// c_alpha = 2 int_0^inf (1 - cos v) v^{-1-alpha} dv, so that the Levy measure
/// |x|^{-1-alpha} dx has characteristic exponent c_alpha |u|^alpha.
/// Quadrature on [0, V] with a Taylor subtraction near zero plus an asymptotic
/// expansion of the oscillatory tail; relative error below 1e-8.
double c_alpha_symbol(double alpha);

enum class KMethod { spectral, mc_fit };

struct KAlphaResult {
    double alpha = 0.0;
    double value = 0.0;
    KMethod method = KMethod::spectral;
    std::map<std::string, double> diagnostics;
    /// Per-radius MC data (mc_fit only).
    std::vector<double> radii;
    std::vector<Estimate> p_hat;
    std::vector<double> dropped_radii;
};

struct SpectralOptions {
    /// Classical -(1/2) d^2/dx^2 instead of the stable generator.
    bool gaussian_mode = false;
    /// Domain is (-half_width, half_width).
    double half_width = 1.0;
    int max_iterations = 2000;
    double tolerance = 1e-13;
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
    int iterations = 0;
};

/// Dirichlet generator on a uniform grid of n_intervals cells (n_intervals - 1 unknowns).
/// Stable case: c_alpha h^{-alpha} times the fractional centered-difference Toeplitz matrix.
EigenPair dirichlet_ground_state(double alpha, int n_intervals, const SpectralOptions& opt = {});

/// Smallest eigenvalue on grids n_grid and 2 n_grid, Richardson-extrapolated with
/// order 1 (stable) or 2 (Gaussian mode). Requires n_grid >= 64.
KAlphaResult estimate_K_alpha_spectral(double alpha, int n_grid, const SpectralOptions& opt = {});

/// Fits -log p(r) = a + K r^{-alpha} by weighted least squares over r_list, with
/// p(r) the crude MC probability that the sup-norm stays below r. Also records the
/// free-exponent slope of log(-log p) against log r ("free_slope").
/// Radii with p = 0 or p = 1 are dropped and listed.
KAlphaResult estimate_K_alpha_mc(double alpha, const std::vector<double>& r_list, std::size_t n_paths,
                                 std::size_t n_steps, std::uint64_t seed, const BatchRunner& runner);

/// Same fit from precomputed sup-norms.
KAlphaResult fit_K_alpha(double alpha, const std::vector<double>& r_list, const std::vector<double>& sup_norms);

struct SeriesResult {
    double value = 0.0;
    /// Partial sum of the k-series alone.
    double partial_sum = 0.0;
    long terms = 0;
    /// Upper bound on the omitted part of the k-series.
    double tail_bound = 0.0;
};

/// C(alpha) = 2 (1/alpha + sum_k 1/(2k(2k-1)(2k-alpha)) + 24 6^alpha (1/(2-alpha) + (2^{alpha-1}-1)/(6(3-alpha)))).
/// n_terms <= 0 sums until the tail bound drops below 1e-12 of the partial sum.
SeriesResult series_C_alpha_detail(double alpha, long n_terms = 0);
double series_C_alpha(double alpha);

/// C1(f, alpha) = (||f'|| (2-alpha)/2)^{alpha/(alpha-1)} sum_k m_2k / (k(2k-1)(2k-alpha)),
/// m_2k = int (f'/||f'||)^{2k}. Returns 0 for f' == 0.
SeriesResult series_C1_detail(const ShiftFunction& f, double alpha, long n_terms = 0);
double series_C1(const ShiftFunction& f, double alpha);

/// exp(-(12 second_moment / eps^2 + 2)): lower bound for P{||X|| < 3 eps} of a
/// martingale with jumps in [-eps, eps].
double ad_martingale_bound(double second_moment, double eps);

/// (lambda / r) log(lambda r^{alpha-1}), the large-shift log-probability rate.
double ad_large_shift_rate(double lambda, double r, double alpha);

std::string to_string(KMethod m);

} // namespace stabledev
