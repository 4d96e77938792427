#include <algorithm>
#include <cmath>

#include "boundary_slots.hpp"
#include "nucgrow/kinetics.hpp"
#include "nucgrow/rng.hpp"

namespace nucgrow {

namespace {

// Each in-box site nucleates by time t with probability 1 - e^{-t/n},
// independently; drawn in row-major order for reproducibility.
SiteSet draw_nucleations(const ProcessParams& params, double t, Rng& rng) {
    const double p = -std::expm1(-t / params.n);
    SiteSet a;
    for (std::int64_t y = params.box.y0; y <= params.box.y1; ++y)
        for (std::int64_t x = params.box.x0; x <= params.box.x1; ++x)
            if (rng.bernoulli(p)) a.insert(Site{x, y});
    return a;
}

}  // namespace

RandomRectanglesResult random_rectangles_process(const ProcessParams& params, double t,
                                                 std::uint64_t seed) {
    params.validate();
    if (params.flavor != Flavor::DS)
        throw std::invalid_argument("random_rectangles_process: requires the DS flavor");
    if (t < 0.0) throw std::invalid_argument("random_rectangles_process: negative time");
    Rng rng(seed);
    RandomRectanglesResult out;
    out.nucleations = draw_nucleations(params, t, rng);
    if (out.nucleations.empty()) return out;

    RectanglesState st = rectangles_process(out.nucleations);
    out.spanned = st.appeared;
    out.merges = st.merges;
    std::vector<Rect> rects;
    rects.reserve(st.rects.size());
    for (const RectSeedPair& p : st.rects) rects.push_back(p.rect);
    std::sort(rects.begin(), rects.end());

    // Alternate: wait for a 1-neighbour infection at the collection's
    // boundary rate, freeze time, re-close, repeat for duration t.
    double now = 0.0;
    while (true) {
        const std::int64_t slots = detail::boundary_slot_count(rects, params.box);
        if (slots == 0) break;
        now += rng.exponential(params.n / (params.k * static_cast<double>(slots)));
        if (now > t) break;
        const Site site = detail::boundary_slot_site(
            rects, params.box,
            static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(slots))));
        ++out.one_neighbour_infections;
        rects.push_back(Rect::single(site));
        out.spanned.push_back(Rect::single(site));
        BareMergeResult merged = merge_rects_until_separated(std::move(rects), 2);
        for (const MergeRecord& mr : merged.merges) {
            out.merges.push_back(mr);
            out.spanned.push_back(mr.merged);
        }
        rects = std::move(merged.rects);
        std::sort(rects.begin(), rects.end());
    }
    out.final_rects = rects;
    return out;
}

GenerousResult generous_rectangles_from(const SiteSet& nucleations, const ProcessParams& params,
                                        double t) {
    params.validate();
    if (params.flavor != Flavor::DS)
        throw std::invalid_argument("generous_rectangles_from: requires DS parameters");
    if (t < 0.0) throw std::invalid_argument("generous_rectangles_from: negative time");
    GenerousResult out;
    const double quarter = std::pow(params.n, 0.25);
    out.initial_halfwidth = std::llround(100.0 * quarter);
    out.merge_radius = std::llround(500.0 * quarter);
    out.enlargement = std::llround(200.0 * quarter);
    out.iterations = static_cast<std::int64_t>(
        std::ceil(t * std::sqrt(params.k) / std::pow(params.n, 0.75)));
    out.nucleations = nucleations;
    if (nucleations.empty()) return out;

    std::vector<Rect> rects;
    for (const Site& s : nucleations.sorted())
        rects.push_back(enlarge(Rect::single(s), 2 * out.initial_halfwidth));
    out.spanned = rects;
    out.states.push_back(GenerousState{rects, 0});

    for (std::int64_t it = 1; it <= out.iterations; ++it) {
        BareMergeResult merged = merge_rects_until_separated(std::move(rects), out.merge_radius);
        for (const MergeRecord& mr : merged.merges) {
            out.merges.push_back(mr);
            out.spanned.push_back(mr.merged);
        }
        rects = std::move(merged.rects);
        std::sort(rects.begin(), rects.end());
        for (Rect& r : rects) {
            r = enlarge(r, out.enlargement);
            out.spanned.push_back(r);
        }
        out.states.push_back(GenerousState{rects, it});
    }
    out.final_rects = rects;
    return out;
}

GenerousResult generous_rectangles_process(const ProcessParams& params, double t,
                                           std::uint64_t seed) {
    Rng rng(seed);
    SiteSet a = draw_nucleations(params, t, rng);
    return generous_rectangles_from(a, params, t);
}

double containment_check(const ProcessParams& params, double t, std::int64_t replicas,
                         std::uint64_t seed, const SimOptions& opts) {
    params.validate();
    if (params.flavor != Flavor::DS)
        throw std::invalid_argument("containment_check: requires the DS flavor");
    if (replicas < 1) throw std::invalid_argument("containment_check: replicas < 1");
    std::int64_t contained = 0;
    for (std::int64_t i = 0; i < replicas; ++i) {
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
        EventTrace trace = simulate(params, SiteSet{}, StopRule::time_horizon(t), s, opts);
        if (trace.outcome != TraceOutcome::stopped)
            throw BudgetError("containment_check: replica exceeded event budget");
        SiteSet realized;
        for (const Event& e : trace.events)
            if (e.cause == Cause::nucleation) realized.insert(e.site);
        GenerousResult gen = generous_rectangles_from(realized, params, t);
        bool ok = true;
        for (const Event& e : trace.events) {
            bool covered = false;
            for (const Rect& r : gen.final_rects)
                if (r.contains(e.site)) {
                    covered = true;
                    break;
                }
            if (!covered) {
                ok = false;
                break;
            }
        }
        if (ok) ++contained;
    }
    return static_cast<double>(contained) / static_cast<double>(replicas);
}

}  // namespace nucgrow
