#include <doctest.h>

#include <cmath>

#include "nucgrow/kinetics.hpp"
#include "nucgrow/rng.hpp"

using namespace nucgrow;

TEST_CASE("first level is the minimum of the window's upward clocks") {
    const double n = 500.0, k = 5.0;
    const std::int64_t halfwidth = 30;
    ProcessParams params{n, k, centred_square(1), Flavor::GenerousHalfPlane};
    const double columns = static_cast<double>(2 * halfwidth + 1);
    const double expect = n / (k * columns);
    const int reps = 6000;
    double sum = 0.0;
    for (int i = 0; i < reps; ++i)
        sum += generous_halfplane_time(params, 1, halfwidth, derive_seed(3, i));
    CHECK(std::fabs(sum / reps - expect) < 3.0 * expect / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("level crossing times are nondecreasing along one trace") {
    ProcessParams params{400.0, 20.0, centred_square(1), Flavor::GenerousHalfPlane};
    for (int i = 0; i < 10; ++i) {
        HalfPlaneResult res = generous_halfplane_run(params, 6, 200, derive_seed(9, i));
        double prev = 0.0;
        for (std::size_t lvl = 1; lvl < res.level_times.size(); ++lvl) {
            CHECK(res.level_times[lvl] >= prev);
            prev = res.level_times[lvl];
        }
        CHECK(res.time == res.level_times.back());
    }
}

TEST_CASE("early-crossing events are rare") {
    // The crossing below (m/100) sqrt(n/k) is a large-deviation event; at
    // this scale it essentially never happens.
    const double n = 1e4, k = 100.0;
    const std::int64_t m = 40;
    ProcessParams params{n, k, centred_square(1), Flavor::GenerousHalfPlane};
    const double threshold = static_cast<double>(m) / 100.0 * std::sqrt(n / k);
    int early = 0;
    const int reps = 60;
    for (int i = 0; i < reps; ++i)
        if (generous_halfplane_time(params, m, 1200, derive_seed(71, i)) < threshold) ++early;
    CHECK(static_cast<double>(early) / reps <= 0.05);
}

TEST_CASE("parameter validation") {
    ProcessParams wrong{100.0, 10.0, centred_square(1), Flavor::DS};
    CHECK_THROWS_AS(generous_halfplane_time(wrong, 3, 10, 1), std::invalid_argument);
    ProcessParams params{100.0, 10.0, centred_square(1), Flavor::GenerousHalfPlane};
    CHECK_THROWS_AS(generous_halfplane_time(params, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(generous_halfplane_time(params, 3, 0, 1), std::invalid_argument);
}
