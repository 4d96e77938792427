#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>
#include <vector>

#include "nucgrow/lattice.hpp"

namespace nucgrow {

// Watches a growing infected set and records, for every level j up to a
// target, the first time some fully infected axis-aligned rectangle has
// semi-perimeter >= j. Maintains per-row and per-column maximal runs; a
// candidate rectangle through a new site is only searched when the runs
// through it could beat the current best (any rectangle containing the
// site is capped by run_height + run_width).
class RectTracker {
public:
    explicit RectTracker(std::int64_t target)
        : target_(target),
          crossing_(static_cast<std::size_t>(target) + 1,
                    std::numeric_limits<double>::quiet_NaN()) {
        crossing_[0] = 0.0;
    }

    void insert(const Site& s, double t) {
        if (done()) return;
        auto [lx, rx] = run_insert(rows_[s.y], s.x);
        auto [ly, ry] = run_insert(cols_[s.x], s.y);
        if ((ry - ly + 1) + (rx - lx + 1) > best_) full_check(s, ly, ry, t);
    }

    std::int64_t best_phi() const { return best_; }
    bool done() const { return best_ >= target_; }

    // Index j in [0, target]; NaN where the level was never reached.
    const std::vector<double>& crossing_times() const { return crossing_; }

private:
    using RunMap = std::map<std::int64_t, std::int64_t>;  // run start -> run end

    static std::pair<std::int64_t, std::int64_t> run_insert(RunMap& runs, std::int64_t v) {
        std::int64_t lo = v, hi = v;
        auto right = runs.find(v + 1);
        if (right != runs.end()) {
            hi = right->second;
            runs.erase(right);
        }
        auto it = runs.upper_bound(v);
        if (it != runs.begin()) {
            auto prev = std::prev(it);
            if (prev->second == v - 1) {
                lo = prev->first;
                runs.erase(prev);
            }
        }
        runs[lo] = hi;
        return {lo, hi};
    }

    static std::pair<std::int64_t, std::int64_t> run_through(const RunMap& runs, std::int64_t v) {
        auto it = runs.upper_bound(v);
        auto prev = std::prev(it);
        return {prev->first, prev->second};
    }

    // Exact best semi-perimeter over fully infected rectangles containing
    // s, restricted (without loss) to the vertical run [ly, ry] of s's
    // column. Width over a row range is the intersection of the row runs
    // through s's column position.
    void full_check(const Site& s, std::int64_t ly, std::int64_t ry, double t) {
        const std::int64_t h = ry - ly + 1;
        lbuf_.resize(static_cast<std::size_t>(h));
        rbuf_.resize(static_cast<std::size_t>(h));
        for (std::int64_t rel = 0; rel < h; ++rel) {
            auto [l, r] = run_through(rows_.at(ly + rel), s.x);
            lbuf_[static_cast<std::size_t>(rel)] = l;
            rbuf_[static_cast<std::size_t>(rel)] = r;
        }
        const std::int64_t rel_y = s.y - ly;
        std::int64_t best = best_;
        std::int64_t ml = lbuf_[static_cast<std::size_t>(rel_y)];
        std::int64_t mr = rbuf_[static_cast<std::size_t>(rel_y)];
        for (std::int64_t y1 = rel_y; y1 >= 0; --y1) {
            ml = std::max(ml, lbuf_[static_cast<std::size_t>(y1)]);
            mr = std::min(mr, rbuf_[static_cast<std::size_t>(y1)]);
            const std::int64_t w0 = mr - ml + 1;
            if (h - y1 + w0 > best) {
                std::int64_t ml2 = ml, mr2 = mr;
                for (std::int64_t y2 = rel_y; y2 < h; ++y2) {
                    if (y2 > rel_y) {
                        ml2 = std::max(ml2, lbuf_[static_cast<std::size_t>(y2)]);
                        mr2 = std::min(mr2, rbuf_[static_cast<std::size_t>(y2)]);
                    }
                    const std::int64_t phi = (y2 - y1 + 1) + (mr2 - ml2 + 1);
                    if (phi > best) best = phi;
                    if (h - y1 + (mr2 - ml2 + 1) <= best) break;
                }
            }
            if (h + w0 <= best) break;
        }
        if (best > best_) {
            for (std::int64_t j = best_ + 1; j <= std::min(best, target_); ++j)
                crossing_[static_cast<std::size_t>(j)] = t;
            best_ = best;
        }
    }

    std::int64_t target_;
    std::int64_t best_ = 0;
    std::vector<double> crossing_;
    std::unordered_map<std::int64_t, RunMap> rows_, cols_;
    std::vector<std::int64_t> lbuf_, rbuf_;
};

}  // namespace nucgrow
