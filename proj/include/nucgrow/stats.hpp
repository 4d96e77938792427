#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace nucgrow {

// Survival function of the Kolmogorov distribution,
// Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

// Two-sample Kolmogorov-Smirnov p-value (asymptotic, with the standard
// small-sample correction factor).
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

// One-sample variant against an analytic CDF.
double ks_one_sample_pvalue(std::vector<double> samples,
                            const std::function<double(double)>& cdf);

// max over x of F_a(x) - F_b(x) for the two empirical CDFs; negative when
// F_a lies everywhere below F_b.
double ecdf_max_excess(std::vector<double> a, std::vector<double> b);

// Half-width of a z-sigma pointwise band on an empirical CDF with
// N samples: z / (2 sqrt(N)), the worst-case binomial standard error.
double ecdf_band(std::int64_t n_samples, double z_sigma);

struct QuantileEstimate {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t n = 0;
};

// Order-statistic quantile with a distribution-free binomial-exact
// confidence interval (default 95%). Requires at least 20 samples.
QuantileEstimate quantile_with_ci(std::vector<double> values, double q,
                                  double confidence = 0.95);

}  // namespace nucgrow
