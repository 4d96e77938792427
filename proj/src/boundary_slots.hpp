#pragma once

#include <cstdint>
#include <vector>

#include "nucgrow/lattice.hpp"

namespace nucgrow {
namespace detail {

// Healthy sites adjacent to a collection of rectangles that are pairwise
// at l1 distance >= 3: every such site has exactly one infected neighbour,
// so each contributes one rate-(k/n) clock. Slots are enumerated per rect
// in (top, bottom, left, right) order over the sorted collection, clipped
// to the simulation box.
inline std::int64_t side_count(std::int64_t lo, std::int64_t hi, std::int64_t clip_lo,
                               std::int64_t clip_hi, bool row_inside) {
    if (!row_inside) return 0;
    const std::int64_t a = std::max(lo, clip_lo), b = std::min(hi, clip_hi);
    return a > b ? 0 : b - a + 1;
}

inline std::int64_t boundary_slot_count(const std::vector<Rect>& rects, const Rect& box) {
    std::int64_t total = 0;
    for (const Rect& r : rects) {
        total += side_count(r.x0, r.x1, box.x0, box.x1, r.y1 + 1 <= box.y1);  // top
        total += side_count(r.x0, r.x1, box.x0, box.x1, r.y0 - 1 >= box.y0);  // bottom
        total += side_count(r.y0, r.y1, box.y0, box.y1, r.x0 - 1 >= box.x0);  // left
        total += side_count(r.y0, r.y1, box.y0, box.y1, r.x1 + 1 <= box.x1);  // right
    }
    return total;
}

// The `slot`-th boundary site under the same enumeration, slot in
// [0, boundary_slot_count).
inline Site boundary_slot_site(const std::vector<Rect>& rects, const Rect& box,
                               std::int64_t slot) {
    for (const Rect& r : rects) {
        struct SideDef {
            std::int64_t lo, hi, clip_lo, clip_hi;
            bool valid;
            bool horizontal;  // slots vary in x
            std::int64_t fixed;
        };
        const SideDef sides[4] = {
            {r.x0, r.x1, box.x0, box.x1, r.y1 + 1 <= box.y1, true, r.y1 + 1},
            {r.x0, r.x1, box.x0, box.x1, r.y0 - 1 >= box.y0, true, r.y0 - 1},
            {r.y0, r.y1, box.y0, box.y1, r.x0 - 1 >= box.x0, false, r.x0 - 1},
            {r.y0, r.y1, box.y0, box.y1, r.x1 + 1 <= box.x1, false, r.x1 + 1},
        };
        for (const SideDef& sd : sides) {
            const std::int64_t c = side_count(sd.lo, sd.hi, sd.clip_lo, sd.clip_hi, sd.valid);
            if (slot < c) {
                const std::int64_t v = std::max(sd.lo, sd.clip_lo) + slot;
                return sd.horizontal ? Site{v, sd.fixed} : Site{sd.fixed, v};
            }
            slot -= c;
        }
    }
    throw std::logic_error("boundary_slot_site: slot out of range");
}

}  // namespace detail
}  // namespace nucgrow
