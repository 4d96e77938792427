#include "nucgrow/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nucgrow/analytics.hpp"

namespace nucgrow {

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 200; ++j) {
        double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

namespace {

double ks_statistic_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    std::size_t i = 0, j = 0;
    double d = 0.0;
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks test: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double d = ks_statistic_two_sample(a, b);
    const double ne = static_cast<double>(a.size()) * static_cast<double>(b.size())
                    / static_cast<double>(a.size() + b.size());
    const double sq = std::sqrt(ne);
    return kolmogorov_q((sq + 0.12 + 0.11 / sq) * d);
}

double ks_one_sample_pvalue(std::vector<double> samples,
                            const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks test: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    const double sq = std::sqrt(n);
    return kolmogorov_q((sq + 0.12 + 0.11 / sq) * d);
}

double ecdf_max_excess(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ecdf_max_excess: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double best = -1.0;
    while (i < a.size() || j < b.size()) {
        double x;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j]))
            x = a[i];
        else
            x = b[j];
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        best = std::max(best, static_cast<double>(i) / na - static_cast<double>(j) / nb);
    }
    return best;
}

double ecdf_band(std::int64_t n_samples, double z_sigma) {
    return z_sigma / (2.0 * std::sqrt(static_cast<double>(n_samples)));
}

namespace {

double binom_cdf(std::int64_t x, std::int64_t n, double p) {
    if (x < 0) return 0.0;
    if (x >= n) return 1.0;
    double sum = 0.0;
    for (std::int64_t i = 0; i <= x; ++i) {
        double lp = log_choose(static_cast<double>(n), static_cast<double>(i))
                  + i * std::log(p) + (n - i) * std::log1p(-p);
        sum += std::exp(lp);
    }
    return std::min(1.0, sum);
}

}  // namespace

QuantileEstimate quantile_with_ci(std::vector<double> values, double q, double confidence) {
    if (q <= 0.0 || q >= 1.0) throw std::invalid_argument("quantile_with_ci: q outside (0,1)");
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    if (n < 20) throw std::invalid_argument("quantile_with_ci: need at least 20 samples");
    std::sort(values.begin(), values.end());
    const double alpha = 1.0 - confidence;
    // 1-based order statistics: point at ceil(q n); CI endpoints from the
    // binomial distribution of the number of samples below the quantile.
    std::int64_t point_idx = static_cast<std::int64_t>(std::ceil(q * static_cast<double>(n)));
    point_idx = std::max<std::int64_t>(1, std::min(n, point_idx));
    std::int64_t lo_idx = 1;
    for (std::int64_t i = n; i >= 1; --i) {
        if (binom_cdf(i - 1, n, q) <= alpha / 2.0) {
            lo_idx = i;
            break;
        }
    }
    std::int64_t hi_idx = n;
    for (std::int64_t i = 1; i <= n; ++i) {
        if (binom_cdf(i - 1, n, q) >= 1.0 - alpha / 2.0) {
            hi_idx = i;
            break;
        }
    }
    QuantileEstimate out;
    out.n = n;
    out.point = values[static_cast<std::size_t>(point_idx - 1)];
    out.ci_low = values[static_cast<std::size_t>(lo_idx - 1)];
    out.ci_high = values[static_cast<std::size_t>(hi_idx - 1)];
    return out;
}

}  // namespace nucgrow
