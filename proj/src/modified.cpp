#include <algorithm>

#include "boundary_slots.hpp"
#include "nucgrow/kinetics.hpp"
#include "nucgrow/rng.hpp"

namespace nucgrow {

namespace {

std::int64_t total_semi_perimeter(const std::vector<Rect>& rects) {
    std::int64_t total = 0;
    for (const Rect& r : rects) total += semi_perimeter(r);
    return total;
}

}  // namespace

double modified_ks_time(const SiteSet& a, const ProcessParams& params, std::int64_t m,
                        std::uint64_t seed, const SimOptions& opts) {
    params.validate();
    if (params.flavor != Flavor::ModifiedKS)
        throw std::invalid_argument("modified_ks_time: requires the ModifiedKS flavor");
    if (a.empty()) throw std::invalid_argument("modified_ks_time: empty seed set");
    if (!a.is_subset_of(params.box))
        throw std::invalid_argument("modified_ks_time: seeds not inside box");
    if (m < 1) throw std::invalid_argument("modified_ks_time: m must be positive");

    // Instantaneous 2-neighbour infections keep the state bootstrap-closed,
    // i.e. a collection of rectangles at pairwise distance >= 3.
    RectanglesState initial = rectangles_process(a);
    std::vector<Rect> rects;
    rects.reserve(initial.rects.size());
    for (const RectSeedPair& p : initial.rects) rects.push_back(p.rect);
    std::sort(rects.begin(), rects.end());

    if (total_semi_perimeter(rects) >= m) return 0.0;

    Rng rng(seed);
    double now = 0.0;
    std::uint64_t steps = 0;
    while (true) {
        const std::int64_t slots = detail::boundary_slot_count(rects, params.box);
        if (slots == 0)
            throw StalledError("modified_ks_time: no in-box growth sites left");
        now += rng.exponential(params.n / (params.k * static_cast<double>(slots)));
        const Site site = detail::boundary_slot_site(
            rects, params.box, static_cast<std::int64_t>(rng.uniform_below(
                                   static_cast<std::uint64_t>(slots))));
        rects.push_back(Rect::single(site));
        BareMergeResult merged = merge_rects_until_separated(std::move(rects), 2);
        rects = std::move(merged.rects);
        std::sort(rects.begin(), rects.end());
        if (++steps >= opts.budget)
            throw BudgetError("modified_ks_time: event budget exhausted");
        if (total_semi_perimeter(rects) >= m) return now;
    }
}

}  // namespace nucgrow
