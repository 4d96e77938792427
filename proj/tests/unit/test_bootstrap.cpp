#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nucgrow/bootstrap.hpp"
#include "nucgrow/rng.hpp"

using namespace nucgrow;

namespace {

// Independent oracle: synchronous fixed-point iteration over the grid.
SiteSet sync_closure(const SiteSet& a, const Rect& box) {
    SiteSet cur;
    for (const Site& s : a) cur.insert(s);
    while (true) {
        SiteSet next = cur;
        bool changed = false;
        for (std::int64_t y = box.y0; y <= box.y1; ++y)
            for (std::int64_t x = box.x0; x <= box.x1; ++x) {
                Site s{x, y};
                if (cur.contains(s)) continue;
                int nb = 0;
                nb += cur.contains(Site{x - 1, y});
                nb += cur.contains(Site{x + 1, y});
                nb += cur.contains(Site{x, y - 1});
                nb += cur.contains(Site{x, y + 1});
                if (nb >= 2) {
                    next.insert(s);
                    changed = true;
                }
            }
        if (!changed) return cur;
        cur = next;
    }
}

SiteSet random_seeds(Rng& rng, std::int64_t count, std::int64_t side) {
    SiteSet a;
    for (std::int64_t i = 0; i < count; ++i)
        a.insert(Site{rng.uniform_in(0, side - 1), rng.uniform_in(0, side - 1)});
    return a;
}

SiteSet union_of(const RectanglesState& st) {
    SiteSet out;
    for (const RectSeedPair& p : st.rects)
        for (std::int64_t y = p.rect.y0; y <= p.rect.y1; ++y)
            for (std::int64_t x = p.rect.x0; x <= p.rect.x1; ++x) out.insert(Site{x, y});
    return out;
}

}  // namespace

TEST_CASE("closure fixed points") {
    Rect box(-5, 5, -5, 5);
    CHECK(closure(SiteSet{}, box).count() == 0);
    CHECK(closure(SiteSet{Site{0, 0}}, box) == SiteSet{Site{0, 0}});
    CHECK(closure(SiteSet{Site{0, 0}, Site{1, 1}}, box) ==
          SiteSet{Site{0, 0}, Site{0, 1}, Site{1, 0}, Site{1, 1}});
    CHECK(closure(SiteSet{Site{0, 0}, Site{0, 2}}, box) ==
          SiteSet{Site{0, 0}, Site{0, 1}, Site{0, 2}});
    CHECK_THROWS_AS(closure(SiteSet{Site{9, 9}}, box), std::invalid_argument);
}

TEST_CASE("closure is idempotent and monotone; equals oracle") {
    Rng rng(17);
    Rect box(0, 11, 0, 11);
    for (int i = 0; i < 150; ++i) {
        SiteSet a = random_seeds(rng, rng.uniform_in(1, 10), 12);
        SiteSet c = closure(a, box);
        CHECK(c == sync_closure(a, box));
        CHECK(closure(c, box) == c);
        SiteSet b = a;
        b.insert(Site{rng.uniform_in(0, 11), rng.uniform_in(0, 11)});
        SiteSet cb = closure(b, box);
        for (const Site& s : c) CHECK(cb.contains(s));
    }
}

TEST_CASE("closure box truncation") {
    // Sites outside the box stay healthy even when surrounded.
    Rect tight(0, 1, 0, 1);
    SiteSet a{Site{0, 0}, Site{1, 1}};
    CHECK(closure(a, tight).count() == 4);
    Rect line(0, 1, 0, 0);
    SiteSet b{Site{0, 0}, Site{1, 0}};
    CHECK(closure(b, line).count() == 2);
}

TEST_CASE("rectangles process basics") {
    auto single = rectangles_process(SiteSet{Site{3, 4}});
    CHECK(single.rects.size() == 1);
    CHECK(single.rects[0].rect == Rect(3, 3, 4, 4));
    CHECK(single.merges.empty());

    auto diag = rectangles_process(SiteSet{Site{0, 0}, Site{1, 1}});
    CHECK(diag.rects.size() == 1);
    CHECK(diag.rects[0].rect == Rect(0, 1, 0, 1));

    auto far = rectangles_process(SiteSet{Site{0, 0}, Site{5, 5}});
    CHECK(far.rects.size() == 2);
    CHECK_THROWS_AS(rectangles_process(SiteSet{}), std::invalid_argument);
}

TEST_CASE("rectangles process union equals closure; final rects separated") {
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        SiteSet a = random_seeds(rng, rng.uniform_in(1, 20), 30);
        RectanglesState st = rectangles_process(a);
        CHECK(union_of(st) == closure(a));
        for (std::size_t p = 0; p < st.rects.size(); ++p)
            for (std::size_t q = p + 1; q < st.rects.size(); ++q)
                CHECK(l1_rect_distance(st.rects[p].rect, st.rects[q].rect) >= 3);
        // Disjointly seeded: every rect is the closure of its own seeds.
        for (const RectSeedPair& pr : st.rects) {
            SiteSet c = closure(pr.seeds);
            CHECK(static_cast<std::int64_t>(c.count()) == pr.rect.area());
        }
    }
}

TEST_CASE("internally spanned") {
    SiteSet a{Site{0, 0}, Site{1, 1}};
    CHECK(internally_spanned(Rect(0, 0, 0, 0), a));
    CHECK(internally_spanned(Rect(0, 1, 0, 1), a));
    CHECK_FALSE(internally_spanned(Rect(0, 2, 0, 2), SiteSet{Site{0, 0}}));
}

TEST_CASE("doubling witness exists at every scale") {
    Rng rng(29);
    int spanned_seen = 0;
    for (int i = 0; i < 300 && spanned_seen < 60; ++i) {
        SiteSet a = random_seeds(rng, rng.uniform_in(2, 8), 8);
        RectanglesState st = rectangles_process(a);
        for (const RectSeedPair& p : st.rects) {
            if (p.rect.area() == 1) continue;
            ++spanned_seen;
            for (std::int64_t ell = 1; ell <= semi_perimeter(p.rect); ++ell) {
                auto w = doubling_witness(p.rect, a, ell);
                REQUIRE(w.has_value());
                CHECK(p.rect.contains(*w));
                CHECK(semi_perimeter(*w) >= ell);
                CHECK(semi_perimeter(*w) <= 2 * ell);
            }
        }
    }
    CHECK(spanned_seen > 0);
}

TEST_CASE("doubling witness endpoint cases") {
    SiteSet a{Site{0, 0}};
    Rect r(0, 0, 0, 0);
    auto w = doubling_witness(r, a, 2);
    REQUIRE(w.has_value());
    CHECK(semi_perimeter(*w) == 2);
    CHECK_THROWS_AS(doubling_witness(r, a, 0), std::invalid_argument);
    CHECK_THROWS_AS(doubling_witness(Rect(0, 4, 0, 4), a, 2), std::invalid_argument);
}

TEST_CASE("coarse bootstrap") {
    CoarseGrid all{64, 1, 1.0};
    auto r1 = coarse_bootstrap(all, 1);
    CHECK(r1.percolated);
    CHECK(r1.rounds == 0);
    CHECK(r1.blocks_per_side == 64);

    CoarseGrid none{64, 1, 0.0};
    CHECK_FALSE(coarse_bootstrap(none, 1).percolated);

    // Common random numbers make the fill fraction monotone in p.
    double prev = -1.0;
    for (double p : {0.02, 0.05, 0.1, 0.2, 0.4}) {
        int filled = 0;
        for (std::uint64_t s = 0; s < 60; ++s) {
            CoarseGrid g{64, 1, p};
            if (coarse_bootstrap(g, derive_seed(99, s)).percolated) ++filled;
        }
        CHECK(filled >= prev);
        prev = filled;
    }
    CHECK_THROWS_AS(coarse_bootstrap(CoarseGrid{3, 2, 0.5}, 1), std::invalid_argument);
}

TEST_CASE("estimate_pc degenerate box") {
    // 1x1 box percolates iff its one site is seeded, so the half-level
    // density is 1/2.
    double p = estimate_pc(0, 400, 12345);
    CHECK(p > 0.40);
    CHECK(p < 0.60);
}

TEST_CASE("estimate_pc decreases with box size and sits in the coarse band") {
    double p8 = estimate_pc(8, 200, 2026);
    double p64 = estimate_pc(64, 200, 2027);
    CHECK(p8 - p64 > 0.02);  // well beyond bisection noise at 200 replicas
    double p128 = estimate_pc(128, 150, 2028);
    CHECK(p64 > p128);
    // Loose band around the slow-converging threshold constant over
    // ln(side^2).
    const double scale = (M_PI * M_PI / 18.0) / (2.0 * std::log(257.0));
    CHECK(p128 > 0.5 * scale);
    CHECK(p128 < 3.0 * scale);
}

TEST_CASE("merge log jsonl") {
    auto st = rectangles_process(SiteSet{Site{0, 0}, Site{1, 1}});
    std::string jsonl = merges_to_jsonl(st.merges);
    CHECK(jsonl ==
          "{\"type\":\"merge\",\"a\":[0,0,0,0],\"b\":[1,1,1,1],\"into\":[0,0,1,1]}\n");
    CHECK(sites_to_jsonl(SiteSet{Site{1, 2}, Site{-1, 0}}) ==
          "{\"type\":\"site\",\"x\":-1,\"y\":0}\n{\"type\":\"site\",\"x\":1,\"y\":2}\n");
}
