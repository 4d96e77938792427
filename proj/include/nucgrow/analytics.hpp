#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nucgrow/sample.hpp"
#include "nucgrow/stats.hpp"

namespace nucgrow {

// P(sum of s i.i.d. exponentials with mean `lambda_mean` <= t), evaluated
// through the Poisson-count identity P(Po(t/lambda) >= s) in log space.
double exp_sum_tail(std::int64_t s, double lambda_mean, double t);

// Binomial(area, 1 - e^{-t/n}) mass at ell: the chance that exactly ell
// sites of a region of the given area nucleate by time t.
double nucleation_count_pmf(std::int64_t area, double t, double n, std::int64_t ell);

// Upper tail: probability of at least ell nucleations.
double nucleation_count_tail(std::int64_t area, double t, double n, std::int64_t ell);

enum class Regime { a, b, c, boundary };

struct RegimePrediction {
    Regime regime = Regime::a;
    double tau_predicted = 0.0;
    std::string formula;
    // Present inside the boundary band: the adjacent regime's value.
    std::optional<double> tau_alternate;
    std::optional<std::string> formula_alternate;
};

const char* regime_name(Regime r);

// Relaxation-time prediction. Regimes split at k = ln n and
// k = sqrt(n) (ln n)^2; within a factor 4 of either threshold the result
// is flagged `boundary` and carries both adjacent predictions.
RegimePrediction predict_tau(double n, double k);

enum class DropletPhase { degenerate, accelerating, crossover, terminal };

struct DropletPrediction {
    double accelerating = 0.0;  // (n/2k) ln m
    double terminal = 0.0;      // m sqrt(n/k) / sqrt(2)
    DropletPhase phase = DropletPhase::accelerating;
};

const char* droplet_phase_name(DropletPhase p);

// Growth-time predictions for a droplet of target semi-perimeter scale m.
DropletPrediction predict_droplet(double n, double k, std::int64_t m);

// log of the binomial coefficient, via lgamma.
double log_choose(double a, double b);

// Order-statistic quantile of one observable's samples with its exact 95%
// confidence interval. Throws when the group has fewer than 20 samples.
QuantileEstimate estimate(const SampleTable& table, const std::string& observable, double q);

}  // namespace nucgrow
