#include "nucgrow/reference.hpp"

#include <vector>

#include "nucgrow/rng.hpp"

namespace nucgrow {

double reference_relaxation_time(const ProcessParams& params, std::uint64_t seed,
                                 std::uint64_t budget) {
    params.validate();
    if (params.flavor != Flavor::DS)
        throw std::invalid_argument("reference_relaxation_time: requires the DS flavor");
    const Rect box = params.box;
    if (!box.contains(Site{0, 0}))
        throw std::invalid_argument("reference_relaxation_time: box must contain the origin");
    const std::int64_t w = box.width(), h = box.height();
    std::vector<std::uint8_t> infected(static_cast<std::size_t>(w * h), 0);
    auto at = [&](std::int64_t x, std::int64_t y) -> std::uint8_t& {
        return infected[static_cast<std::size_t>((x - box.x0) + w * (y - box.y0))];
    };
    auto rate_of = [&](std::int64_t x, std::int64_t y) {
        int nb = 0;
        if (x > box.x0 && at(x - 1, y)) ++nb;
        if (x < box.x1 && at(x + 1, y)) ++nb;
        if (y > box.y0 && at(x, y - 1)) ++nb;
        if (y < box.y1 && at(x, y + 1)) ++nb;
        if (nb >= 2) return 1.0;
        if (nb == 1) return params.k / params.n;
        return 1.0 / params.n;
    };
    Rng rng(seed);
    double now = 0.0;
    for (std::uint64_t step = 0; step < budget; ++step) {
        double total = 0.0;
        for (std::int64_t y = box.y0; y <= box.y1; ++y)
            for (std::int64_t x = box.x0; x <= box.x1; ++x)
                if (!at(x, y)) total += rate_of(x, y);
        if (total <= 0.0) throw StalledError("reference_relaxation_time: no healthy sites");
        now += rng.exponential(1.0 / total);
        double u = rng.next_unit_co() * total;
        std::int64_t cx = box.x0, cy = box.y0;
        bool placed = false;
        for (std::int64_t y = box.y0; y <= box.y1 && !placed; ++y)
            for (std::int64_t x = box.x0; x <= box.x1 && !placed; ++x) {
                if (at(x, y)) continue;
                u -= rate_of(x, y);
                if (u < 0.0) {
                    cx = x;
                    cy = y;
                    placed = true;
                }
            }
        if (!placed) {  // floating-point edge: take the last healthy site
            for (std::int64_t y = box.y1; y >= box.y0 && !placed; --y)
                for (std::int64_t x = box.x1; x >= box.x0 && !placed; --x)
                    if (!at(x, y)) {
                        cx = x;
                        cy = y;
                        placed = true;
                    }
        }
        at(cx, cy) = 1;
        if (cx == 0 && cy == 0) return now;
    }
    throw BudgetError("reference_relaxation_time: event budget exhausted");
}

}  // namespace nucgrow
