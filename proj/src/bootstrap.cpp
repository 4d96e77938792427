#include "nucgrow/bootstrap.hpp"

#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "nucgrow/rng.hpp"

namespace nucgrow {

namespace {

constexpr std::int64_t kDenseAreaLimit = 1 << 25;

const std::int64_t kDx[4] = {1, -1, 0, 0};
const std::int64_t kDy[4] = {0, 0, 1, -1};

SiteSet closure_dense(const SiteSet& a, const Rect& box) {
    const std::int64_t w = box.width(), h = box.height();
    std::vector<std::uint8_t> state(static_cast<std::size_t>(w * h), 0);
    std::vector<std::uint8_t> nbr(static_cast<std::size_t>(w * h), 0);
    auto idx = [&](std::int64_t x, std::int64_t y) {
        return static_cast<std::size_t>((x - box.x0) + w * (y - box.y0));
    };
    std::deque<Site> queue;
    auto infect = [&](std::int64_t x, std::int64_t y) {
        state[idx(x, y)] = 1;
        for (int d = 0; d < 4; ++d) {
            std::int64_t nx = x + kDx[d], ny = y + kDy[d];
            if (nx < box.x0 || nx > box.x1 || ny < box.y0 || ny > box.y1) continue;
            std::size_t i = idx(nx, ny);
            if (state[i]) continue;
            if (++nbr[i] == 2) queue.push_back(Site{nx, ny});
        }
    };
    for (const Site& s : a) infect(s.x, s.y);
    while (!queue.empty()) {
        Site s = queue.front();
        queue.pop_front();
        if (!state[idx(s.x, s.y)]) infect(s.x, s.y);
    }
    SiteSet out;
    for (std::int64_t y = box.y0; y <= box.y1; ++y)
        for (std::int64_t x = box.x0; x <= box.x1; ++x)
            if (state[idx(x, y)]) out.insert(Site{x, y});
    return out;
}

SiteSet closure_sparse(const SiteSet& a, const Rect& box) {
    SiteSet infected;
    std::unordered_map<Site, int, SiteHash> nbr;
    std::deque<Site> queue;
    auto infect = [&](const Site& s) {
        infected.insert(s);
        for (int d = 0; d < 4; ++d) {
            Site v{checked_add(s.x, kDx[d]), checked_add(s.y, kDy[d])};
            if (!box.contains(v) || infected.contains(v)) continue;
            if (++nbr[v] == 2) queue.push_back(v);
        }
    };
    for (const Site& s : a) infect(s);
    while (!queue.empty()) {
        Site s = queue.front();
        queue.pop_front();
        if (!infected.contains(s)) infect(s);
    }
    return infected;
}

}  // namespace

SiteSet closure(const SiteSet& a, const Rect& box) {
    if (!a.is_subset_of(box)) throw std::invalid_argument("closure: seeds not inside box");
    if (a.empty()) return SiteSet{};
    if (box.area() <= kDenseAreaLimit) return closure_dense(a, box);
    return closure_sparse(a, box);
}

SiteSet closure(const SiteSet& a) {
    if (a.empty()) return SiteSet{};
    auto sites = a.sorted();
    Rect bbox = Rect::single(sites.front());
    for (const Site& s : sites) bbox = bounding_rect(bbox, s);
    // The closure can't leave the bounding rectangle: a site outside it has
    // at most one neighbour in any subset of the rectangle... more simply,
    // the half-plane beyond each bounding edge contains no seed and a site
    // there never gains two infected neighbours before some site one step
    // closer does; induction keeps all infections inside.
    if (bbox.area() > kDenseAreaLimit) return closure_sparse(a, bbox);
    return closure_dense(a, bbox);
}

namespace {

// Shared merge loop. Entries are keyed for deterministic pair selection:
// the eligible pair with the lexicographically smallest (rect, rect) key
// merges first. `on_merge` receives (a, b, merged) and the new entry id.
struct MergeEngine {
    struct Key {
        Rect rect;
        std::uint64_t uid;
        friend bool operator<(const Key& a, const Key& b) {
            if (a.rect != b.rect) return a.rect < b.rect;
            return a.uid < b.uid;
        }
    };

    std::map<std::uint64_t, Rect> alive;  // uid -> rect, uid is creation order
    std::set<std::pair<Key, Key>> eligible;
    std::uint64_t next_uid = 0;
    std::int64_t merge_distance = 2;

    std::uint64_t add(const Rect& r) {
        std::uint64_t uid = next_uid++;
        Key k{r, uid};
        for (const auto& [ouid, orect] : alive) {
            if (l1_rect_distance(orect, r) <= merge_distance) {
                Key ok{orect, ouid};
                eligible.insert(ok < k ? std::make_pair(ok, k) : std::make_pair(k, ok));
            }
        }
        alive.emplace(uid, r);
        return uid;
    }

    // Runs merges until all pairs are separated. Calls on_merge(a_uid,
    // b_uid, merged_uid) after each merge.
    template <typename Fn>
    void run(Fn&& on_merge) {
        while (!eligible.empty()) {
            auto it = eligible.begin();
            Key ka = it->first, kb = it->second;
            eligible.erase(it);
            auto ia = alive.find(ka.uid), ib = alive.find(kb.uid);
            if (ia == alive.end() || ib == alive.end()) continue;  // stale pair
            Rect merged = bounding_rect(ia->second, ib->second);
            alive.erase(ia);
            alive.erase(ib);
            std::uint64_t uid = add(merged);
            on_merge(ka, kb, uid);
        }
    }
};

}  // namespace

RectanglesState rectangles_process(const SiteSet& a) {
    if (a.empty()) throw std::invalid_argument("rectangles_process: empty seed set");
    RectanglesState out;
    MergeEngine eng;
    std::unordered_map<std::uint64_t, SiteSet> seeds;
    for (const Site& s : a.sorted()) {
        Rect r = Rect::single(s);
        std::uint64_t uid = eng.add(r);
        seeds[uid] = SiteSet{s};
        out.appeared.push_back(r);
    }
    eng.run([&](const MergeEngine::Key& ka, const MergeEngine::Key& kb, std::uint64_t uid) {
        Rect merged = eng.alive.at(uid);
        out.merges.push_back(MergeRecord{ka.rect, kb.rect, merged});
        out.appeared.push_back(merged);
        SiteSet u;
        for (const Site& s : seeds[ka.uid]) u.insert(s);
        for (const Site& s : seeds[kb.uid]) u.insert(s);
        seeds.erase(ka.uid);
        seeds.erase(kb.uid);
        seeds[uid] = std::move(u);
    });
    for (const auto& [uid, rect] : eng.alive)
        out.rects.push_back(RectSeedPair{rect, std::move(seeds[uid])});
    return out;
}

BareMergeResult merge_rects_until_separated(std::vector<Rect> rects,
                                            std::int64_t merge_distance) {
    BareMergeResult out;
    MergeEngine eng;
    eng.merge_distance = merge_distance;
    std::sort(rects.begin(), rects.end());
    for (const Rect& r : rects) eng.add(r);
    eng.run([&](const MergeEngine::Key& ka, const MergeEngine::Key& kb, std::uint64_t uid) {
        out.merges.push_back(MergeRecord{ka.rect, kb.rect, eng.alive.at(uid)});
    });
    for (const auto& [uid, rect] : eng.alive) out.rects.push_back(rect);
    return out;
}

bool internally_spanned(const Rect& r, const SiteSet& a) {
    SiteSet inside = a.intersect(r);
    if (inside.empty()) return false;
    return closure(inside, r).count() == r.area();
}

std::optional<Rect> doubling_witness(const Rect& r, const SiteSet& a, std::int64_t ell) {
    if (ell < 1 || ell > semi_perimeter(r))
        throw std::invalid_argument("doubling_witness: ell out of range");
    if (!internally_spanned(r, a))
        throw std::invalid_argument("doubling_witness: rectangle not internally spanned");
    RectanglesState replay = rectangles_process(a.intersect(r));
    for (const Rect& cand : replay.appeared) {
        std::int64_t phi = semi_perimeter(cand);
        if (phi >= ell && phi <= 2 * ell) return cand;
    }
    return std::nullopt;
}

CoarseResult coarse_bootstrap(const CoarseGrid& grid, std::uint64_t seed) {
    if (grid.block_halfwidth < 1 || grid.outer_halfwidth < 2 * grid.block_halfwidth)
        throw std::invalid_argument("coarse_bootstrap: need M >= 2m >= 2");
    if (grid.outer_halfwidth % grid.block_halfwidth != 0)
        throw std::invalid_argument("coarse_bootstrap: block half-width must divide outer");
    if (grid.p < 0.0 || grid.p > 1.0)
        throw std::invalid_argument("coarse_bootstrap: p outside [0,1]");
    const std::int64_t B = grid.outer_halfwidth / grid.block_halfwidth;
    CoarseResult res;
    res.blocks_per_side = B;
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(B * B), 0);
    // Occupation via a uniform field thresholded at p, so runs with the
    // same seed are coupled monotonically across a p sweep.
    Rng rng(seed);
    std::int64_t count = 0;
    for (auto& c : occ) {
        c = rng.next_unit_co() < grid.p ? 1 : 0;
        count += c;
    }
    std::vector<std::int64_t> fresh, next;
    std::int64_t rounds = 0;
    auto at = [&](std::int64_t x, std::int64_t y) -> std::uint8_t& {
        return occ[static_cast<std::size_t>(x + B * y)];
    };
    bool grew = true;
    while (grew && count < B * B) {
        grew = false;
        next.clear();
        for (std::int64_t y = 0; y < B; ++y) {
            for (std::int64_t x = 0; x < B; ++x) {
                if (at(x, y)) continue;
                int infected = 0;
                if (x > 0 && at(x - 1, y)) ++infected;
                if (x + 1 < B && at(x + 1, y)) ++infected;
                if (y > 0 && at(x, y - 1)) ++infected;
                if (y + 1 < B && at(x, y + 1)) ++infected;
                if (infected >= 2) next.push_back(x + B * y);
            }
        }
        if (!next.empty()) {
            for (std::int64_t i : next) occ[static_cast<std::size_t>(i)] = 1;
            count += static_cast<std::int64_t>(next.size());
            ++rounds;
            grew = true;
        }
    }
    res.rounds = rounds;
    res.percolated = (count == B * B);
    return res;
}

namespace {

bool percolates_once(std::int64_t halfwidth, double p, std::uint64_t seed) {
    const std::int64_t side = 2 * halfwidth + 1;
    std::vector<std::uint8_t> state(static_cast<std::size_t>(side * side), 0);
    std::vector<std::uint8_t> nbr(static_cast<std::size_t>(side * side), 0);
    Rng rng(seed);
    std::vector<std::int64_t> queue;
    std::int64_t count = 0;
    auto push_neighbours = [&](std::int64_t x, std::int64_t y) {
        const std::int64_t offs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (auto& o : offs) {
            std::int64_t nx = x + o[0], ny = y + o[1];
            if (nx < 0 || nx >= side || ny < 0 || ny >= side) continue;
            std::size_t i = static_cast<std::size_t>(nx + side * ny);
            if (state[i]) continue;
            if (++nbr[i] == 2) queue.push_back(nx + side * ny);
        }
    };
    for (std::int64_t y = 0; y < side; ++y)
        for (std::int64_t x = 0; x < side; ++x)
            if (rng.next_unit_co() < p) {
                state[static_cast<std::size_t>(x + side * y)] = 1;
                ++count;
                push_neighbours(x, y);
            }
    while (!queue.empty()) {
        std::int64_t i = queue.back();
        queue.pop_back();
        std::size_t ii = static_cast<std::size_t>(i);
        if (state[ii]) continue;
        state[ii] = 1;
        ++count;
        push_neighbours(i % side, i / side);
    }
    return count == side * side;
}

}  // namespace

double estimate_pc(std::int64_t halfwidth, std::int64_t replicas, std::uint64_t seed) {
    if (replicas < 1) throw std::invalid_argument("estimate_pc: replicas < 1");
    if (halfwidth < 0) throw std::invalid_argument("estimate_pc: negative half-width");
    double lo = 0.0, hi = 1.0;
    const int kRounds = 12;
    for (int round = 0; round < kRounds; ++round) {
        double mid = 0.5 * (lo + hi);
        std::int64_t hits = 0;
        for (std::int64_t i = 0; i < replicas; ++i) {
            std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(round) * replicas + i);
            if (percolates_once(halfwidth, mid, s)) ++hits;
        }
        if (2 * hits >= replicas)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::string merges_to_jsonl(const std::vector<MergeRecord>& merges) {
    std::string out;
    char buf[256];
    for (const MergeRecord& m : merges) {
        std::snprintf(buf, sizeof(buf),
                      "{\"type\":\"merge\",\"a\":[%lld,%lld,%lld,%lld],"
                      "\"b\":[%lld,%lld,%lld,%lld],\"into\":[%lld,%lld,%lld,%lld]}\n",
                      static_cast<long long>(m.a.x0), static_cast<long long>(m.a.y0),
                      static_cast<long long>(m.a.x1), static_cast<long long>(m.a.y1),
                      static_cast<long long>(m.b.x0), static_cast<long long>(m.b.y0),
                      static_cast<long long>(m.b.x1), static_cast<long long>(m.b.y1),
                      static_cast<long long>(m.merged.x0), static_cast<long long>(m.merged.y0),
                      static_cast<long long>(m.merged.x1), static_cast<long long>(m.merged.y1));
        out += buf;
    }
    return out;
}

std::string sites_to_jsonl(const SiteSet& sites) {
    std::string out;
    char buf[96];
    for (const Site& s : sites.sorted()) {
        std::snprintf(buf, sizeof(buf), "{\"type\":\"site\",\"x\":%lld,\"y\":%lld}\n",
                      static_cast<long long>(s.x), static_cast<long long>(s.y));
        out += buf;
    }
    return out;
}

}  // namespace nucgrow
