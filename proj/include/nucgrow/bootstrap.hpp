#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nucgrow/lattice.hpp"

namespace nucgrow {

// 2-neighbour bootstrap closure of `a` inside `box`: the minimal superset
// of `a` closed under "at least two infected neighbours become infected".
// Sites outside `box` stay healthy. Throws if `a` is not contained in `box`.
SiteSet closure(const SiteSet& a, const Rect& box);

// Closure on the unrestricted lattice. The closure of a finite set never
// leaves its bounding rectangle, so this is the boxed closure over it.
SiteSet closure(const SiteSet& a);

struct MergeRecord {
    Rect a, b, merged;
};

struct RectSeedPair {
    Rect rect;
    SiteSet seeds;
};

struct RectanglesState {
    std::vector<RectSeedPair> rects;  // final collection, pairwise l1 distance >= 3
    std::vector<MergeRecord> merges;  // ordered merge log
    std::vector<Rect> appeared;       // every rectangle ever in the collection, creation order
};

// Merge procedure tracking bootstrap growth as a collection of disjointly
// seeded rectangles: pairs at l1 distance <= 2 are replaced by their
// bounding rectangle (equal to the closure of the seed union at that
// distance) until no pair is close. Pair selection is deterministic:
// always the lexicographically smallest eligible pair by (x0,y0,x1,y1)
// of both rectangles.
RectanglesState rectangles_process(const SiteSet& a);

// Same merge loop on bare rectangles with a configurable merge radius;
// used by the coupled rectangle processes.
struct BareMergeResult {
    std::vector<Rect> rects;
    std::vector<MergeRecord> merges;
};
BareMergeResult merge_rects_until_separated(std::vector<Rect> rects,
                                            std::int64_t merge_distance);

// True iff the closure of a's restriction to r fills r entirely.
bool internally_spanned(const Rect& r, const SiteSet& a);

// Replays the rectangles process on a's restriction to r and returns the
// first intermediate rectangle whose semi-perimeter lands in [ell, 2*ell].
// The merge step grows semi-perimeters by at most phi_a + phi_b + 2, so a
// witness always exists for a spanned rectangle; an absent result would
// falsify the process itself.
std::optional<Rect> doubling_witness(const Rect& r, const SiteSet& a, std::int64_t ell);

// Block-scale bootstrap experiment: an outer box of half-width M split
// into blocks of half-width m, i.e. a (M/m) x (M/m) block lattice. Each
// block is occupied independently with probability p.
struct CoarseGrid {
    std::int64_t outer_halfwidth = 0;  // M
    std::int64_t block_halfwidth = 0;  // m, must divide M with M >= 2m
    double p = 0.0;
};

struct CoarseResult {
    bool percolated = false;
    std::int64_t rounds = 0;  // synchronous update rounds until fixpoint
    std::int64_t blocks_per_side = 0;
};

CoarseResult coarse_bootstrap(const CoarseGrid& grid, std::uint64_t seed);

// Bisection estimate of the density at which a p-random subset of the box
// S(halfwidth) percolates with probability one half. Twelve bisection
// rounds with `replicas` Monte Carlo runs per round.
double estimate_pc(std::int64_t halfwidth, std::int64_t replicas, std::uint64_t seed);

// One line per merge: {"type":"merge","a":[x0,y0,x1,y1],...}.
std::string merges_to_jsonl(const std::vector<MergeRecord>& merges);

// One line per site in sorted order: {"type":"site","x":..,"y":..}.
std::string sites_to_jsonl(const SiteSet& sites);

}  // namespace nucgrow
