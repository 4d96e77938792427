#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nucgrow/analytics.hpp"
#include "nucgrow/rng.hpp"

using namespace nucgrow;

TEST_CASE("exp_sum_tail closed forms") {
    CHECK(exp_sum_tail(1, 1.0, 0.0) == 0.0);
    CHECK(exp_sum_tail(3, 2.5, 0.0) == 0.0);
    CHECK(std::fabs(exp_sum_tail(1, 2.0, 2.0) - (1.0 - std::exp(-1.0))) < 1e-12);
    CHECK(std::fabs(exp_sum_tail(2, 1.0, 1.0) - (1.0 - 2.0 * std::exp(-1.0))) < 1e-12);
    // Erlang CDF at s=3: 1 - e^-t (1 + t + t^2/2).
    const double t = 2.7;
    const double expect = 1.0 - std::exp(-t) * (1.0 + t + t * t / 2.0);
    CHECK(std::fabs(exp_sum_tail(3, 1.0, t) - expect) < 1e-12);
}

TEST_CASE("exp_sum_tail monotonicity") {
    double prev = -1.0;
    for (double t : {0.5, 1.0, 2.0, 5.0, 20.0}) {
        double v = exp_sum_tail(4, 1.5, t);
        CHECK(v >= prev);
        prev = v;
    }
    for (std::int64_t s = 1; s < 30; ++s)
        CHECK(exp_sum_tail(s, 1.0, 6.0) >= exp_sum_tail(s + 1, 1.0, 6.0));
}

TEST_CASE("exp_sum_tail large s stays accurate") {
    // Deep tail checked against the leading-term expansion bounds:
    // term ratio mu/s < 1 gives first_term <= tail <= first_term/(1-mu/s).
    const std::int64_t s = 10000;
    const double mu = 9000.0;
    const double log_first = -mu + s * std::log(mu) - std::lgamma(static_cast<double>(s) + 1.0);
    const double first = std::exp(log_first);
    const double tail = exp_sum_tail(s, 1.0, mu);
    CHECK(tail >= first);
    CHECK(tail <= first / (1.0 - mu / static_cast<double>(s)) * (1.0 + 1e-9));
    // Near the bulk the complement route must agree with direct summation.
    const double mid = exp_sum_tail(100, 1.0, 100.0);
    CHECK(mid > 0.4);
    CHECK(mid < 0.6);
}

TEST_CASE("exp_sum_tail matches Monte Carlo") {
    Rng rng(404);
    for (std::int64_t s : {1, 5, 50}) {
        for (double lambda : {0.1, 1.0, 10.0}) {
            const double t = static_cast<double>(s) * lambda;
            const std::int64_t draws = 20000;
            std::int64_t hits = 0;
            for (std::int64_t d = 0; d < draws; ++d) {
                double sum = 0.0;
                for (std::int64_t i = 0; i < s; ++i) sum += rng.exponential(lambda);
                if (sum <= t) ++hits;
            }
            const double p = exp_sum_tail(s, lambda, t);
            const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(draws));
            CHECK(std::fabs(static_cast<double>(hits) / draws - p) < 3.0 * sigma);
        }
    }
}

TEST_CASE("nucleation count pmf") {
    CHECK(nucleation_count_pmf(10, 0.0, 5.0, 0) == 1.0);
    CHECK(nucleation_count_pmf(10, 0.0, 5.0, 3) == 0.0);
    CHECK(std::fabs(nucleation_count_pmf(4, 1.0, 1.0, 0) - std::exp(-4.0)) < 1e-12);
    double total = 0.0;
    for (std::int64_t ell = 0; ell <= 40; ++ell)
        total += nucleation_count_pmf(40, 2.0, 7.0, ell);
    CHECK(std::fabs(total - 1.0) < 1e-9);
    // Tail consistency with the pmf.
    double tail = 0.0;
    for (std::int64_t j = 5; j <= 40; ++j) tail += nucleation_count_pmf(40, 2.0, 7.0, j);
    CHECK(std::fabs(nucleation_count_tail(40, 2.0, 7.0, 5) - tail) < 1e-12);
    CHECK(nucleation_count_tail(40, 2.0, 7.0, 0) == 1.0);
}

TEST_CASE("predict_tau regimes") {
    auto a = predict_tau(1e6, 1.0);
    CHECK(a.regime == Regime::a);
    CHECK(a.tau_predicted == doctest::Approx(3.969e4).epsilon(1e-3));

    auto b = predict_tau(1e6, 1e3);
    CHECK(b.regime == Regime::b);
    CHECK(b.tau_predicted == doctest::Approx(1070.5).epsilon(1e-3));

    auto c = predict_tau(1e6, 9e5);
    CHECK(c.regime == Regime::c);
    CHECK(c.tau_predicted == doctest::Approx(219.4).epsilon(1e-3));

    // Boundary band flags both adjacent formulas.
    auto near_a = predict_tau(1e6, 20.0);
    CHECK(near_a.regime == Regime::boundary);
    CHECK(near_a.tau_alternate.has_value());
}

TEST_CASE("predict_tau finite over the parameter plane") {
    for (double n : {1e3, 1e4, 1e6, 1e9}) {
        for (double frac : {0.001, 0.01, 0.1, 0.3, 0.5}) {
            double k = std::max(2.0, n * frac);
            if (k > n / 2) k = n / 2;
            auto p = predict_tau(n, k);
            CHECK(std::isfinite(p.tau_predicted));
            CHECK(p.tau_predicted > 0.0);
        }
    }
}

TEST_CASE("binomial nucleation tails sit below the closed-form bounds") {
    // Pinned point for the semi-perimeter bound: n = 1e6, k = 1e4,
    // m = sqrt(k ln n), t = (n/4k) ln(k/ln n), threshold
    // ell = ceil((m^2/k) ln(k/ln n)).
    const double n = 1e6, k = 1e4;
    const double logn = std::log(n);
    const double m2 = k * logn;
    const double L = std::log(k / logn);
    const double t = n / (4.0 * k) * L;
    const std::int64_t area = std::llround(m2 / 4.0);
    const std::int64_t ell = static_cast<std::int64_t>(std::ceil(m2 / k * L));
    const double tail = nucleation_count_tail(area, t, n, ell);
    const double log_bound = ell * std::log(m2 * L / (4.0 * ell * k));
    CHECK(std::log(tail) < log_bound);

    // Fast-rate point: both box scales, small constant c = 0.1.
    const double n2 = 1e6, k2 = 9e5, c = 0.1;
    const double L2 = std::log(n2 / k2);
    const double t2 = c * std::cbrt(n2 * n2 / (k2 * L2));
    const double ms = std::pow(k2 * n2 * L2, 1.0 / 6.0);
    const std::int64_t hw_small = std::llround(ms);
    const std::int64_t hw_big = std::llround(ms * std::sqrt(L2));
    const std::int64_t area_small = (2 * hw_small + 1) * (2 * hw_small + 1);
    const std::int64_t area_big = (2 * hw_big + 1) * (2 * hw_big + 1);
    CHECK(nucleation_count_tail(area_big, t2, n2,
                                static_cast<std::int64_t>(std::ceil(L2))) <
          std::pow(k2 / n2, 4.0));
    CHECK(nucleation_count_tail(area_small, t2, n2,
                                static_cast<std::int64_t>(std::ceil(std::cbrt(L2)))) <
          std::pow(L2, -4.0));
}

TEST_CASE("estimate over a sample table") {
    SampleTable t;
    for (int i = 1; i <= 99; ++i)
        t.append(SampleRow{"r", static_cast<std::uint64_t>(i), 1.0, 1.0, 0, "DS", "tau", 0,
                           static_cast<double>(i), "ok"});
    auto q = estimate(t, "tau", 0.5);
    CHECK(q.point == 50.0);
    CHECK(q.ci_low < 50.0);
    CHECK(q.ci_high > 50.0);
    CHECK_THROWS_AS(estimate(t, "missing", 0.5), std::invalid_argument);
}

TEST_CASE("predict_droplet") {
    auto acc = predict_droplet(1e6, 100.0, 100);
    CHECK(acc.accelerating == doctest::Approx(2.3026e4).epsilon(1e-3));
    CHECK(acc.phase == DropletPhase::accelerating);

    auto tv = predict_droplet(1e4, 100.0, 1000);
    CHECK(tv.terminal == doctest::Approx(7071.1).epsilon(1e-3));
    CHECK(tv.phase == DropletPhase::terminal);

    auto degen = predict_droplet(1e6, 100.0, 2);
    CHECK(degen.phase == DropletPhase::degenerate);
    CHECK(degen.accelerating == doctest::Approx((1e6 / 200.0) * std::log(2.0)));
    CHECK_THROWS_AS(predict_droplet(1e6, 100.0, 1), std::invalid_argument);
}
