#include "stabledev/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace stabledev {

std::pair<double, double> clopper_pearson(std::size_t hits, std::size_t n, double confidence) {
    if (n == 0 || hits > n) throw std::invalid_argument("clopper_pearson: need 0 <= hits <= n, n > 0");
    const double tail = (1.0 - confidence) / 2.0;
    const double k = static_cast<double>(hits);
    const double nn = static_cast<double>(n);
    const double lo = hits == 0 ? 0.0 : boost::math::ibeta_inv(k, nn - k + 1.0, tail);
    const double hi = hits == n ? 1.0 : boost::math::ibeta_inv(k + 1.0, nn - k, 1.0 - tail);
    return {lo, hi};
}

namespace {

double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

} // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

double chi_square_sf(double statistic, double dof) {
    if (!(dof > 0.0)) throw std::invalid_argument("chi_square_sf: dof must be positive");
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n || (!w.empty() && w.size() != n)) {
        throw std::invalid_argument("linear_fit: need >= 2 points and matching sizes");
    }
    auto weight = [&](std::size_t i) { return w.empty() ? 1.0 : w[i]; };
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sw += weight(i);
        sx += weight(i) * x[i];
        sy += weight(i) * y[i];
    }
    const double xbar = sx / sw;
    const double ybar = sy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += weight(i) * (x[i] - xbar) * (x[i] - xbar);
        sxy += weight(i) * (x[i] - xbar) * (y[i] - ybar);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("linear_fit: x values are degenerate");
    LinearFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    if (n > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = y[i] - fit.intercept - fit.slope * x[i];
            rss += weight(i) * e * e;
        }
        const double s2 = rss / static_cast<double>(n - 2);
        fit.slope_se = std::sqrt(s2 / sxx);
        fit.intercept_se = std::sqrt(s2 * (1.0 / sw + xbar * xbar / sxx));
    }
    return fit;
}

double mean(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("mean of empty sample");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
    if (v.size() < 2) throw std::invalid_argument("variance needs at least two samples");
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty sample");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
    }
    return m;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson_correlation: size mismatch");
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

} // namespace stabledev
