#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nucgrow/rng.hpp"
#include "nucgrow/stats.hpp"

using namespace nucgrow;

TEST_CASE("two-sample KS accepts same law, rejects shifted law") {
    Rng rng(5);
    std::vector<double> a, b, c;
    for (int i = 0; i < 4000; ++i) {
        a.push_back(rng.exponential(1.0));
        b.push_back(rng.exponential(1.0));
        c.push_back(rng.exponential(1.35));
    }
    CHECK(ks_two_sample_pvalue(a, b) > 0.01);
    CHECK(ks_two_sample_pvalue(a, c) < 1e-6);
}

TEST_CASE("one-sample KS against analytic CDF") {
    Rng rng(6);
    std::vector<double> a;
    for (int i = 0; i < 5000; ++i) a.push_back(rng.exponential(2.0));
    auto cdf = [](double x) { return 1.0 - std::exp(-x / 2.0); };
    CHECK(ks_one_sample_pvalue(a, cdf) > 0.01);
    auto wrong = [](double x) { return 1.0 - std::exp(-x); };
    CHECK(ks_one_sample_pvalue(a, wrong) < 1e-6);
}

TEST_CASE("ecdf excess sign") {
    std::vector<double> small{1, 2, 3, 4}, large{11, 12, 13, 14};
    // F_small dominates pointwise, so its excess over F_large is 1.
    CHECK(ecdf_max_excess(small, large) == doctest::Approx(1.0));
    CHECK(ecdf_max_excess(large, small) <= 0.0);
}

TEST_CASE("quantile with binomial CI") {
    std::vector<double> constant(50, 5.0);
    auto q = quantile_with_ci(constant, 0.5);
    CHECK(q.point == 5.0);
    CHECK(q.ci_low == 5.0);
    CHECK(q.ci_high == 5.0);

    std::vector<double> ladder;
    for (int i = 1; i <= 99; ++i) ladder.push_back(i);
    auto med = quantile_with_ci(ladder, 0.5);
    CHECK(med.point == 50.0);
    CHECK(med.ci_low < 50.0);
    CHECK(med.ci_high > 50.0);

    CHECK_THROWS_AS(quantile_with_ci(std::vector<double>(5, 1.0), 0.5), std::invalid_argument);
}

TEST_CASE("median of exponentials near ln 2") {
    Rng rng(8);
    std::vector<double> draws;
    for (int i = 0; i < 10000; ++i) draws.push_back(rng.exponential(1.0));
    auto q = quantile_with_ci(draws, 0.5);
    // sigma of the sample median is about 1/(2 f(med) sqrt(N)) = 0.01.
    CHECK(std::fabs(q.point - std::log(2.0)) < 0.03);
    CHECK(q.ci_low <= q.point);
    CHECK(q.ci_high >= q.point);
}
