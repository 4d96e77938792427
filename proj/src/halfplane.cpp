#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "nucgrow/kinetics.hpp"
#include "nucgrow/rng.hpp"

namespace nucgrow {

namespace {

// Fenwick tree over channel rates; supports prefix sampling.
class RateTree {
public:
    explicit RateTree(std::size_t n) : n_(n), tree_(n + 1, 0.0), rates_(n, 0.0) {}

    void set(std::size_t i, double rate) {
        const double delta = rate - rates_[i];
        if (delta == 0.0) return;
        rates_[i] = rate;
        for (std::size_t j = i + 1; j <= n_; j += j & (~j + 1)) tree_[j] += delta;
    }

    double rate(std::size_t i) const { return rates_[i]; }

    double total() const {
        double sum = 0.0;
        for (std::size_t j = n_; j > 0; j -= j & (~j + 1)) sum += tree_[j];
        return sum;
    }

    // Channel at cumulative position u in [0, total).
    std::size_t find(double u) const {
        std::size_t pos = 0;
        std::size_t pw = 1;
        while ((pw << 1) <= n_) pw <<= 1;
        for (; pw > 0; pw >>= 1) {
            const std::size_t next = pos + pw;
            if (next <= n_ && tree_[next] <= u) {
                pos = next;
                u -= tree_[next];
            }
        }
        return pos;
    }

private:
    std::size_t n_;
    std::vector<double> tree_;
    std::vector<double> rates_;
};

}  // namespace

// Column heights fully describe the state: the instant downward rule keeps
// every column solid below its top. Channels per column c: the top site's
// upward clock (rate k/n), and towards each horizontal neighbour one
// rate-1 clock per infected site overlooking that neighbour's column. A
// sideways infection lands at a uniform height in the overlook range and
// solidifies the target column up to it.
HalfPlaneResult generous_halfplane_run(const ProcessParams& params, std::int64_t m,
                                       std::int64_t halfwidth, std::uint64_t seed,
                                       const SimOptions& opts) {
    params.validate();
    if (params.flavor != Flavor::GenerousHalfPlane)
        throw std::invalid_argument("generous_halfplane_run: requires the GenerousHalfPlane flavor");
    if (m < 1) throw std::invalid_argument("generous_halfplane_run: m must be positive");
    if (halfwidth < 1)
        throw std::invalid_argument("generous_halfplane_run: halfwidth must be positive");
    const double spread = static_cast<double>(m) * std::sqrt(params.n / params.k);
    if (static_cast<double>(halfwidth) < 2.0 * spread)
        std::fprintf(stderr,
                     "warning: generous half-plane window halfwidth %lld below 2*m*sqrt(n/k)=%.0f; "
                     "periodic wrap may bias the crossing time\n",
                     static_cast<long long>(halfwidth), 2.0 * spread);

    const std::size_t w = static_cast<std::size_t>(2 * halfwidth + 1);
    std::vector<std::int64_t> top(w, 0);
    RateTree rates(3 * w);
    const double up_rate = params.k / params.n;
    for (std::size_t c = 0; c < w; ++c) rates.set(3 * c, up_rate);

    auto left_of = [&](std::size_t c) { return c == 0 ? w - 1 : c - 1; };
    auto right_of = [&](std::size_t c) { return c + 1 == w ? 0 : c + 1; };
    auto refresh = [&](std::size_t c) {
        const std::size_t l = left_of(c), r = right_of(c);
        rates.set(3 * c + 1, static_cast<double>(std::max<std::int64_t>(0, top[c] - top[r])));
        rates.set(3 * c + 2, static_cast<double>(std::max<std::int64_t>(0, top[c] - top[l])));
        rates.set(3 * l + 1, static_cast<double>(std::max<std::int64_t>(0, top[l] - top[c])));
        rates.set(3 * r + 2, static_cast<double>(std::max<std::int64_t>(0, top[r] - top[c])));
    };

    HalfPlaneResult out;
    out.level_times.assign(static_cast<std::size_t>(m) + 1,
                           std::numeric_limits<double>::quiet_NaN());
    Rng rng(seed);
    std::int64_t max_top = 0;
    double now = 0.0;

    auto raise = [&](std::size_t c, std::int64_t new_top) {
        top[c] = new_top;
        refresh(c);
        while (max_top < new_top && max_top < m)
            out.level_times[static_cast<std::size_t>(++max_top)] = now;
    };

    while (max_top < m) {
        if (out.events >= opts.budget)
            throw BudgetError("generous_halfplane_run: event budget exhausted");
        const double total = rates.total();
        now += rng.exponential(1.0 / total);
        std::size_t ch = rates.find(rng.next_unit_co() * total);
        while (ch < 3 * w && rates.rate(ch) <= 0.0) ++ch;  // floating-point edge
        if (ch >= 3 * w) continue;
        const std::size_t c = ch / 3;
        const std::size_t kind = ch % 3;
        ++out.events;
        if (kind == 0) {
            raise(c, top[c] + 1);
        } else {
            const std::size_t dest = kind == 1 ? right_of(c) : left_of(c);
            const std::int64_t d = top[c] - top[dest];
            if (d <= 0) continue;  // unreachable under exact rates
            const std::int64_t jump =
                static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(d)));
            raise(dest, top[dest] + 1 + jump);
        }
    }
    out.time = now;
    return out;
}

double generous_halfplane_time(const ProcessParams& params, std::int64_t m,
                               std::int64_t halfwidth, std::uint64_t seed,
                               const SimOptions& opts) {
    return generous_halfplane_run(params, m, halfwidth, seed, opts).time;
}

}  // namespace nucgrow
