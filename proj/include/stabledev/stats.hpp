// Small statistics toolkit used by the estimators and the property tests.
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace stabledev {

/// Exact (Clopper-Pearson) two-sided interval for a binomial proportion.
std::pair<double, double> clopper_pearson(std::size_t hits, std::size_t n, double confidence);

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov p-value
/// (Stephens' small-sample correction on the effective size).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double intercept_se = 0.0;
    std::size_t n = 0;
};

/// Weighted least squares y = intercept + slope * x. Empty weights mean unit weights.
/// Standard errors use the residual variance scaled by n - 2 degrees of freedom.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y, std::span<const double> w = {});

double mean(std::span<const double> v);
/// Sample variance with n - 1 in the denominator.
double variance(std::span<const double> v);
double median(std::vector<double> v);
double pearson_correlation(std::span<const double> a, std::span<const double> b);

} // namespace stabledev
