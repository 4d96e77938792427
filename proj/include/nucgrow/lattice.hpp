#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace nucgrow {

// Checked 64-bit arithmetic. Lattice coordinates must stay inside the
// signed 64-bit range; anything that would wrap is a hard error.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("lattice: integer overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("lattice: integer overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("lattice: integer overflow");
    return r;
}

struct Site {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Site& a, const Site& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Site& a, const Site& b) { return !(a == b); }
    friend bool operator<(const Site& a, const Site& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

inline std::int64_t l1_distance(const Site& a, const Site& b) {
    return checked_add(std::llabs(checked_sub(a.x, b.x)), std::llabs(checked_sub(a.y, b.y)));
}

inline std::int64_t cheb_norm(const Site& s) {
    return std::max(std::llabs(s.x), std::llabs(s.y));
}

// Axis-aligned rectangle with inclusive integer bounds. Side lengths are
// counted in sites, so a single site is a 1x1 rectangle.
struct Rect {
    std::int64_t x0 = 0, x1 = 0, y0 = 0, y1 = 0;

    Rect() = default;
    Rect(std::int64_t x0_, std::int64_t x1_, std::int64_t y0_, std::int64_t y1_)
        : x0(x0_), x1(x1_), y0(y0_), y1(y1_) {
        if (x0 > x1 || y0 > y1) throw std::invalid_argument("Rect: empty bounds");
    }

    static Rect single(const Site& s) { return Rect(s.x, s.x, s.y, s.y); }

    std::int64_t width() const { return checked_add(checked_sub(x1, x0), 1); }
    std::int64_t height() const { return checked_add(checked_sub(y1, y0), 1); }
    std::int64_t area() const { return checked_mul(width(), height()); }

    bool contains(const Site& s) const {
        return s.x >= x0 && s.x <= x1 && s.y >= y0 && s.y <= y1;
    }
    bool contains(const Rect& r) const {
        return r.x0 >= x0 && r.x1 <= x1 && r.y0 >= y0 && r.y1 <= y1;
    }

    friend bool operator==(const Rect& a, const Rect& b) {
        return a.x0 == b.x0 && a.x1 == b.x1 && a.y0 == b.y0 && a.y1 == b.y1;
    }
    friend bool operator!=(const Rect& a, const Rect& b) { return !(a == b); }
    // (x0, y0, x1, y1) ordering; used as the deterministic merge tie-break key.
    friend bool operator<(const Rect& a, const Rect& b) {
        if (a.x0 != b.x0) return a.x0 < b.x0;
        if (a.y0 != b.y0) return a.y0 < b.y0;
        if (a.x1 != b.x1) return a.x1 < b.x1;
        return a.y1 < b.y1;
    }
};

// Semi-perimeter: width + height in sites. A 1x1 rectangle has value 2.
inline std::int64_t semi_perimeter(const Rect& r) {
    return checked_add(r.width(), r.height());
}

// Square [-m, m]^2 centred on the origin, side length 2m+1.
inline Rect centred_square(std::int64_t m) {
    if (m < 0) throw std::invalid_argument("centred_square: negative half-width");
    return Rect(-m, m, -m, m);
}

// Minimum over site pairs of the l1 distance; computed from the interval
// gaps, zero iff the rectangles intersect.
inline std::int64_t l1_rect_distance(const Rect& a, const Rect& b) {
    std::int64_t gx = std::max<std::int64_t>(0, std::max(checked_sub(b.x0, a.x1), checked_sub(a.x0, b.x1)));
    std::int64_t gy = std::max<std::int64_t>(0, std::max(checked_sub(b.y0, a.y1), checked_sub(a.y0, b.y1)));
    return checked_add(gx, gy);
}

inline Rect bounding_rect(const Rect& a, const Rect& b) {
    return Rect(std::min(a.x0, b.x0), std::max(a.x1, b.x1),
                std::min(a.y0, b.y0), std::max(a.y1, b.y1));
}

inline Rect bounding_rect(const Rect& a, const Site& s) {
    return bounding_rect(a, Rect::single(s));
}

// Grow each side length by exactly d. Odd d expands the low sides by
// ceil(d/2) and the high sides by floor(d/2), keeping the centre up to
// half a site.
inline Rect enlarge(const Rect& r, std::int64_t d) {
    if (d < 0) throw std::invalid_argument("enlarge: negative amount");
    std::int64_t lo = (d + 1) / 2, hi = d / 2;
    return Rect(checked_sub(r.x0, lo), checked_add(r.x1, hi),
                checked_sub(r.y0, lo), checked_add(r.y1, hi));
}

struct SiteHash {
    std::size_t operator()(const Site& s) const {
        std::uint64_t z = static_cast<std::uint64_t>(s.x) * 0x9e3779b97f4a7c15ull
                        ^ (static_cast<std::uint64_t>(s.y) + 0xbf58476d1ce4e5b9ull);
        z ^= z >> 30; z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27; z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return static_cast<std::size_t>(z);
    }
};

// Sparse set of infected sites: O(1) expected membership and insertion.
class SiteSet {
public:
    SiteSet() = default;
    SiteSet(std::initializer_list<Site> sites) {
        for (const Site& s : sites) insert(s);
    }

    bool insert(const Site& s) { return set_.insert(s).second; }
    bool contains(const Site& s) const { return set_.count(s) != 0; }
    std::int64_t count() const { return static_cast<std::int64_t>(set_.size()); }
    bool empty() const { return set_.empty(); }

    // Deterministic order for serialization and seeding; hash order is
    // never exposed.
    std::vector<Site> sorted() const {
        std::vector<Site> v(set_.begin(), set_.end());
        std::sort(v.begin(), v.end());
        return v;
    }

    auto begin() const { return set_.begin(); }
    auto end() const { return set_.end(); }

    bool is_subset_of(const Rect& box) const {
        for (const Site& s : set_)
            if (!box.contains(s)) return false;
        return true;
    }

    SiteSet intersect(const Rect& r) const {
        SiteSet out;
        for (const Site& s : set_)
            if (r.contains(s)) out.insert(s);
        return out;
    }

    friend bool operator==(const SiteSet& a, const SiteSet& b) { return a.set_ == b.set_; }

private:
    std::unordered_set<Site, SiteHash> set_;
};

}  // namespace nucgrow
