#include <doctest.h>

#include <vector>

#include "nucgrow/rect_tracker.hpp"
#include "nucgrow/rng.hpp"

using namespace nucgrow;

namespace {

// Brute force: max semi-perimeter over all fully infected rectangles of a
// small grid.
std::int64_t brute_best_phi(const std::vector<std::vector<bool>>& grid) {
    const std::int64_t h = static_cast<std::int64_t>(grid.size());
    const std::int64_t w = h ? static_cast<std::int64_t>(grid[0].size()) : 0;
    std::int64_t best = 0;
    for (std::int64_t y0 = 0; y0 < h; ++y0)
        for (std::int64_t y1 = y0; y1 < h; ++y1)
            for (std::int64_t x0 = 0; x0 < w; ++x0)
                for (std::int64_t x1 = x0; x1 < w; ++x1) {
                    bool full = true;
                    for (std::int64_t y = y0; y <= y1 && full; ++y)
                        for (std::int64_t x = x0; x <= x1 && full; ++x)
                            if (!grid[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)])
                                full = false;
                    if (full) best = std::max(best, (x1 - x0 + 1) + (y1 - y0 + 1));
                }
    return best;
}

}  // namespace

TEST_CASE("tracker matches brute force on random insertion orders") {
    Rng rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        const std::int64_t side = 7;
        std::vector<Site> cells;
        for (std::int64_t y = 0; y < side; ++y)
            for (std::int64_t x = 0; x < side; ++x) cells.push_back(Site{x, y});
        // Random shuffle via the deterministic generator.
        for (std::size_t i = cells.size(); i > 1; --i)
            std::swap(cells[i - 1], cells[rng.uniform_below(i)]);

        RectTracker tracker(2 * side + 5);
        std::vector<std::vector<bool>> grid(side, std::vector<bool>(side, false));
        const std::size_t steps = 1 + rng.uniform_below(cells.size());
        for (std::size_t i = 0; i < steps; ++i) {
            const Site& s = cells[i];
            grid[static_cast<std::size_t>(s.y)][static_cast<std::size_t>(s.x)] = true;
            tracker.insert(s, static_cast<double>(i));
            CHECK(tracker.best_phi() == brute_best_phi(grid));
        }
    }
}

TEST_CASE("tracker crossing times are exact") {
    RectTracker tracker(8);
    // Build a 3x2 block one site at a time; phi crossings are checkable by hand.
    tracker.insert(Site{0, 0}, 1.0);  // 1x1: phi 2
    CHECK(tracker.best_phi() == 2);
    tracker.insert(Site{1, 0}, 2.0);  // 2x1: phi 3
    tracker.insert(Site{2, 0}, 3.0);  // 3x1: phi 4
    tracker.insert(Site{0, 1}, 4.0);  // still 3x1
    CHECK(tracker.best_phi() == 4);
    tracker.insert(Site{1, 1}, 5.0);  // 2x2: phi 4
    CHECK(tracker.best_phi() == 4);
    tracker.insert(Site{2, 1}, 6.0);  // 3x2: phi 5
    CHECK(tracker.best_phi() == 5);
    const auto& times = tracker.crossing_times();
    CHECK(times[2] == 1.0);
    CHECK(times[3] == 2.0);
    CHECK(times[4] == 3.0);
    CHECK(times[5] == 6.0);
    CHECK_FALSE(tracker.done());
}

TEST_CASE("tracker stops updating once the target is reached") {
    RectTracker tracker(3);
    tracker.insert(Site{0, 0}, 0.0);
    tracker.insert(Site{0, 1}, 1.0);
    CHECK(tracker.done());
    CHECK(tracker.best_phi() == 3);
    tracker.insert(Site{0, 2}, 2.0);  // ignored
    CHECK(tracker.best_phi() == 3);
}

TEST_CASE("tracker handles disconnected regions") {
    RectTracker tracker(100);
    tracker.insert(Site{0, 0}, 0.0);
    tracker.insert(Site{10, 10}, 1.0);
    tracker.insert(Site{10, 11}, 2.0);
    CHECK(tracker.best_phi() == 3);
    // L-shape: the inner 2x2 is still missing a corner.
    tracker.insert(Site{11, 11}, 3.0);
    CHECK(tracker.best_phi() == 3);
    tracker.insert(Site{11, 10}, 4.0);
    CHECK(tracker.best_phi() == 4);  // full 2x2
    CHECK(tracker.crossing_times()[4] == 4.0);
}
