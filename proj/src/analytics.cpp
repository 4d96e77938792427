#include "nucgrow/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nucgrow {

namespace {

constexpr double kPi = 3.14159265358979323846;

// P(Po(mu) >= s) with s >= 1. Splits on whether the tail or its complement
// is the small quantity, so the returned value keeps full relative
// precision on whichever side is tiny.
double poisson_upper_tail(double mu, std::int64_t s) {
    if (mu <= 0.0) return 0.0;
    if (s <= 0) return 1.0;
    const double logmu = std::log(mu);
    if (static_cast<double>(s) > mu) {
        // Tail starts at its largest term; sum the decreasing series.
        double log_first = -mu + s * logmu - std::lgamma(static_cast<double>(s) + 1.0);
        double factor = 1.0, term = 1.0;
        for (std::int64_t j = s + 1;; ++j) {
            term *= mu / static_cast<double>(j);
            factor += term;
            if (term < factor * 1e-18) break;
        }
        return std::exp(log_first) * factor;
    }
    // Complement P(Po <= s-1): terms increase towards j = s-1.
    double log_top = -mu + (s - 1) * logmu - std::lgamma(static_cast<double>(s));
    double factor = 1.0, term = 1.0;
    for (std::int64_t j = s - 1; j >= 1; --j) {
        term *= static_cast<double>(j) / mu;
        factor += term;
        if (term < factor * 1e-18) break;
    }
    double complement = std::exp(log_top) * factor;
    return 1.0 - complement;
}

}  // namespace

double exp_sum_tail(std::int64_t s, double lambda_mean, double t) {
    if (s < 1) throw std::invalid_argument("exp_sum_tail: s must be positive");
    if (lambda_mean <= 0.0) throw std::invalid_argument("exp_sum_tail: mean must be positive");
    if (t < 0.0) throw std::invalid_argument("exp_sum_tail: negative time");
    if (t == 0.0) return 0.0;
    return poisson_upper_tail(t / lambda_mean, s);
}

double log_choose(double a, double b) {
    if (b < 0.0 || b > a) return -std::numeric_limits<double>::infinity();
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

double nucleation_count_pmf(std::int64_t area, double t, double n, std::int64_t ell) {
    if (area < 1) throw std::invalid_argument("nucleation_count_pmf: area must be positive");
    if (ell < 0 || ell > area) throw std::invalid_argument("nucleation_count_pmf: ell out of range");
    if (t < 0.0 || n <= 0.0) throw std::invalid_argument("nucleation_count_pmf: bad t or n");
    const double p = -std::expm1(-t / n);
    if (p <= 0.0) return ell == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return ell == area ? 1.0 : 0.0;
    double lp = log_choose(static_cast<double>(area), static_cast<double>(ell))
              + static_cast<double>(ell) * std::log(p)
              + static_cast<double>(area - ell) * std::log1p(-p);
    return std::exp(lp);
}

double nucleation_count_tail(std::int64_t area, double t, double n, std::int64_t ell) {
    if (ell <= 0) return 1.0;
    if (ell > area) return 0.0;
    const double p = -std::expm1(-t / n);
    if (p <= 0.0) return 0.0;
    const double mean = p * static_cast<double>(area);
    if (static_cast<double>(ell) <= mean) {
        // Large tail: accumulate the complement.
        double c = 0.0;
        for (std::int64_t j = 0; j < ell; ++j) c += nucleation_count_pmf(area, t, n, j);
        return 1.0 - c;
    }
    // Small tail: terms decrease geometrically past the mean.
    double sum = 0.0;
    for (std::int64_t j = ell; j <= area; ++j) {
        double term = nucleation_count_pmf(area, t, n, j);
        sum += term;
        if (term < sum * 1e-18 && static_cast<double>(j) > mean) break;
    }
    return sum;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::a: return "a";
        case Regime::b: return "b";
        case Regime::c: return "c";
        case Regime::boundary: return "boundary";
    }
    return "?";
}

namespace {

double formula_a(double n, double /*k*/) { return (kPi * kPi / 18.0) * n / std::log(n); }

double formula_b(double n, double k) {
    double arg = k / std::log(n);
    if (arg <= 1.0) return std::numeric_limits<double>::quiet_NaN();
    return 0.25 * (n / k) * std::log(arg);
}

double formula_c(double n, double k) {
    double arg = n / k;
    if (arg <= 1.0) return std::numeric_limits<double>::quiet_NaN();
    return std::cbrt(n * n / (k * std::log(arg)));
}

}  // namespace

RegimePrediction predict_tau(double n, double k) {
    if (!(n > 1.0) || !(k >= 1.0) || !(k <= n))
        throw std::invalid_argument("predict_tau: need 1 <= k <= n, n > 1");
    const double b1 = std::log(n);
    const double b2 = std::sqrt(n) * b1 * b1;
    RegimePrediction out;
    auto set = [&](Regime r, double v, const char* f) {
        out.regime = r;
        out.tau_predicted = v;
        out.formula = f;
    };
    auto set_alt = [&](double v, const char* f) {
        if (std::isfinite(v) && v > 0.0) {
            out.tau_alternate = v;
            out.formula_alternate = f;
        }
    };
    const char* fa = "(pi^2/18) n / ln n";
    const char* fb = "(1/4)(n/k) ln(k/ln n)";
    const char* fc = "(n^2/(k ln(n/k)))^(1/3)";
    if (k <= b1) {
        set(Regime::a, formula_a(n, k), fa);
        if (k >= b1 / 4.0) {
            out.regime = Regime::boundary;
            set_alt(formula_b(n, k), fb);
        }
    } else if (k >= b2) {
        set(Regime::c, formula_c(n, k), fc);
        if (k <= 4.0 * b2) {
            out.regime = Regime::boundary;
            set_alt(formula_b(n, k), fb);
        }
    } else {
        set(Regime::b, formula_b(n, k), fb);
        if (k <= 4.0 * b1) {
            out.regime = Regime::boundary;
            set_alt(formula_a(n, k), fa);
        } else if (k >= b2 / 4.0) {
            out.regime = Regime::boundary;
            set_alt(formula_c(n, k), fc);
        }
    }
    return out;
}

const char* droplet_phase_name(DropletPhase p) {
    switch (p) {
        case DropletPhase::degenerate: return "degenerate";
        case DropletPhase::accelerating: return "accelerating";
        case DropletPhase::crossover: return "crossover";
        case DropletPhase::terminal: return "terminal";
    }
    return "?";
}

QuantileEstimate estimate(const SampleTable& table, const std::string& observable, double q) {
    return quantile_with_ci(table.values(observable), q);
}

DropletPrediction predict_droplet(double n, double k, std::int64_t m) {
    if (m < 2) throw std::invalid_argument("predict_droplet: m must be at least 2");
    if (!(n > 0.0) || !(k >= 1.0) || !(k <= n))
        throw std::invalid_argument("predict_droplet: need 1 <= k <= n");
    DropletPrediction out;
    const double md = static_cast<double>(m);
    out.accelerating = (n / (2.0 * k)) * std::log(md);
    out.terminal = md * std::sqrt(n / k) / std::sqrt(2.0);
    if (m == 2) {
        out.phase = DropletPhase::degenerate;
        return out;
    }
    const double acc_edge = std::sqrt((n / k) * std::log(md));
    const double ratio_nk = n / k;
    const double tv_edge = ratio_nk > 1.0 ? std::sqrt(ratio_nk) * std::log(ratio_nk) : 0.0;
    if (md <= acc_edge)
        out.phase = DropletPhase::accelerating;
    else if (tv_edge > 0.0 && md >= tv_edge)
        out.phase = DropletPhase::terminal;
    else
        out.phase = DropletPhase::crossover;
    return out;
}

}  // namespace nucgrow
