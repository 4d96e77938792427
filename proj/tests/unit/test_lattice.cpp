#include <doctest.h>

#include "nucgrow/lattice.hpp"
#include "nucgrow/rng.hpp"

using namespace nucgrow;

namespace {

Rect random_rect(Rng& rng, std::int64_t span) {
    std::int64_t x0 = rng.uniform_in(-span, span), x1 = rng.uniform_in(-span, span);
    std::int64_t y0 = rng.uniform_in(-span, span), y1 = rng.uniform_in(-span, span);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    return Rect(x0, x1, y0, y1);
}

// Reference l1 distance by enumerating all site pairs.
std::int64_t l1_by_enumeration(const Rect& a, const Rect& b) {
    std::int64_t best = INT64_MAX;
    for (std::int64_t ax = a.x0; ax <= a.x1; ++ax)
        for (std::int64_t ay = a.y0; ay <= a.y1; ++ay)
            for (std::int64_t bx = b.x0; bx <= b.x1; ++bx)
                for (std::int64_t by = b.y0; by <= b.y1; ++by) {
                    const std::int64_t d = std::llabs(ax - bx) + std::llabs(ay - by);
                    if (d < best) best = d;
                }
    return best;
}

}  // namespace

TEST_CASE("centred squares") {
    CHECK(centred_square(0) == Rect(0, 0, 0, 0));
    CHECK(centred_square(0).area() == 1);
    CHECK(centred_square(2) == Rect(-2, 2, -2, 2));
    CHECK(centred_square(2).area() == 25);
    CHECK(semi_perimeter(centred_square(2)) == 10);
    CHECK(semi_perimeter(centred_square(1)) == 6);
    CHECK_THROWS_AS(centred_square(-1), std::invalid_argument);
}

TEST_CASE("semi-perimeter counts sites per side") {
    CHECK(semi_perimeter(Rect(0, 0, 0, 0)) == 2);
    CHECK(semi_perimeter(Rect(0, 2, 0, 0)) == 4);
    CHECK(semi_perimeter(Rect(-2, 2, -2, 2)) == 10);
}

TEST_CASE("rect distance") {
    Rect a(0, 0, 0, 0);
    CHECK(l1_rect_distance(a, a) == 0);
    CHECK(l1_rect_distance(Rect(0, 0, 0, 0), Rect(2, 2, 2, 2)) == 4);
    CHECK(l1_rect_distance(Rect(0, 1, 0, 0), Rect(3, 4, 0, 0)) == 2);

    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        Rect r1 = random_rect(rng, 6), r2 = random_rect(rng, 6);
        CHECK(l1_rect_distance(r1, r2) == l1_by_enumeration(r1, r2));
        CHECK(l1_rect_distance(r1, r2) == l1_rect_distance(r2, r1));
        // Triangle inequality through an intermediate single site.
        Rect mid = Rect::single(Site{rng.uniform_in(-6, 6), rng.uniform_in(-6, 6)});
        CHECK(l1_rect_distance(r1, r2) <=
              l1_rect_distance(r1, mid) + l1_rect_distance(mid, r2));
    }
}

TEST_CASE("bounding rect") {
    Rect a(0, 0, 0, 2), b(2, 2, 1, 1);
    CHECK(bounding_rect(a, a) == a);
    CHECK(bounding_rect(Rect(0, 0, 0, 0), Rect(1, 1, 1, 1)) == Rect(0, 1, 0, 1));
    CHECK(bounding_rect(a, b) == Rect(0, 2, 0, 2));

    // Bounded growth: the merged semi-perimeter never exceeds the parts
    // plus their separation.
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        Rect r1 = random_rect(rng, 20), r2 = random_rect(rng, 20);
        CHECK(semi_perimeter(bounding_rect(r1, r2)) <=
              semi_perimeter(r1) + semi_perimeter(r2) + l1_rect_distance(r1, r2));
    }
}

TEST_CASE("enlarge") {
    Rect r(-1, 1, -1, 1);
    CHECK(enlarge(r, 0) == r);
    CHECK(enlarge(r, 4) == Rect(-3, 3, -3, 3));
    CHECK(enlarge(Rect(0, 1, 0, 0), 2) == Rect(-1, 2, -1, 1));
    // Odd amounts: low sides take the extra step.
    CHECK(enlarge(Rect(0, 0, 0, 0), 3) == Rect(-2, 1, -2, 1));

    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        Rect base = random_rect(rng, 15);
        std::int64_t d = rng.uniform_in(0, 9);
        CHECK(semi_perimeter(enlarge(base, d)) == semi_perimeter(base) + 2 * d);
    }
}

TEST_CASE("overflow is rejected") {
    const std::int64_t big = INT64_MAX - 1;
    CHECK_THROWS_AS(semi_perimeter(Rect(-big, big, -big, big)), std::overflow_error);
    CHECK_THROWS_AS(enlarge(Rect(-big, 0, 0, 0), 6), std::overflow_error);
}

TEST_CASE("site set basics") {
    SiteSet s{Site{0, 0}, Site{1, 1}, Site{0, 0}};
    CHECK(s.count() == 2);
    CHECK(s.contains(Site{0, 0}));
    CHECK_FALSE(s.contains(Site{2, 2}));
    auto v = s.sorted();
    CHECK(v.front() == Site{0, 0});
    CHECK(v.back() == Site{1, 1});
    CHECK(s.is_subset_of(Rect(0, 1, 0, 1)));
    CHECK_FALSE(s.is_subset_of(Rect(0, 0, 0, 0)));
}
