#include "nucgrow/kinetics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <queue>

#include "nucgrow/rect_tracker.hpp"
#include "nucgrow/rng.hpp"

namespace nucgrow {

const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::DS: return "DS";
        case Flavor::KS: return "KS";
        case Flavor::ModifiedKS: return "ModifiedKS";
        case Flavor::GenerousHalfPlane: return "GenerousHalfPlane";
    }
    return "?";
}

Flavor flavor_from_name(const std::string& name) {
    if (name == "DS") return Flavor::DS;
    if (name == "KS") return Flavor::KS;
    if (name == "ModifiedKS") return Flavor::ModifiedKS;
    if (name == "GenerousHalfPlane") return Flavor::GenerousHalfPlane;
    throw std::invalid_argument("unknown flavor: " + name);
}

const char* cause_name(Cause c) {
    switch (c) {
        case Cause::nucleation: return "nucleation";
        case Cause::one_neighbour: return "one_neighbour";
        case Cause::two_neighbour: return "two_neighbour";
        case Cause::instantaneous: return "instantaneous";
    }
    return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kMaxEngineArea = 1ll << 26;

// Shell bookkeeping around the origin: completion counts per Chebyshev
// shell give the square-fill times, the running maximum norm gives the
// first-exit times.
class ShellTracker {
public:
    explicit ShellTracker(std::int64_t m)
        : m_(m),
          remaining_(static_cast<std::size_t>(m) + 1, 0),
          t_minus_(static_cast<std::size_t>(m) + 1, std::numeric_limits<double>::quiet_NaN()),
          t_plus_(static_cast<std::size_t>(m) + 1, std::numeric_limits<double>::quiet_NaN()) {
        remaining_[0] = 1;
        for (std::int64_t j = 1; j <= m_; ++j) remaining_[static_cast<std::size_t>(j)] = 8 * j;
    }

    void insert(const Site& s, double t) {
        const std::int64_t c = cheb_norm(s);
        while (minus_ptr_ <= m_ && minus_ptr_ <= c)
            t_minus_[static_cast<std::size_t>(minus_ptr_++)] = t;
        if (c <= m_ && --remaining_[static_cast<std::size_t>(c)] == 0) {
            while (filled_ + 1 <= m_ && remaining_[static_cast<std::size_t>(filled_ + 1)] == 0)
                t_plus_[static_cast<std::size_t>(++filled_)] = t;
        }
    }

    std::int64_t filled_radius() const { return filled_; }
    const std::vector<double>& t_minus() const { return t_minus_; }
    const std::vector<double>& t_plus() const { return t_plus_; }

private:
    std::int64_t m_;
    std::int64_t filled_ = -1;
    std::int64_t minus_ptr_ = 0;
    std::vector<std::int64_t> remaining_;
    std::vector<double> t_minus_, t_plus_;
};

struct ClockEntry {
    double t;
    std::int64_t idx;
    std::uint32_t epoch;
};

struct ClockLater {
    bool operator()(const ClockEntry& a, const ClockEntry& b) const {
        if (a.t != b.t) return a.t > b.t;
        if (a.idx != b.idx) return a.idx > b.idx;
        return a.epoch > b.epoch;
    }
};

struct EngineOutputs {
    TraceOutcome outcome = TraceOutcome::stopped;
    double stop_time = 0.0;
    std::uint64_t events = 0;
};

// Frontier engine over a dense box. Only sites adjacent to the infected
// set carry clocks; the 0-neighbour nucleation field is one aggregated
// stream whose site is chosen uniformly at event time. A pending clock is
// discarded (epoch bump) and re-drawn whenever its site's rate class
// changes, which by memorylessness preserves the law of competing clocks.
class Engine {
public:
    Engine(const ProcessParams& params, std::uint64_t seed, const SimOptions& opts)
        : params_(params), box_(params.box), rng_(seed), budget_(opts.budget) {
        params_.validate();
        if (params_.flavor != Flavor::DS && params_.flavor != Flavor::KS)
            throw std::invalid_argument("simulate: engine runs DS and KS flavors only");
        if (box_.area() > kMaxEngineArea)
            throw std::invalid_argument("simulate: box area exceeds engine limit");
        w_ = box_.width();
        area_ = box_.area();
        state_.assign(static_cast<std::size_t>(area_), 0);
        nbr_.assign(static_cast<std::size_t>(area_), 0);
        epoch_.assign(static_cast<std::size_t>(area_), 0);
        eligible_ = area_;
        nucleation_ = params_.flavor == Flavor::DS;
        origin_idx_ = box_.contains(Site{0, 0}) ? index_of(0, 0) : -1;
    }

    void set_trace(std::vector<Event>* sink) { trace_ = sink; }
    void set_shell_tracker(ShellTracker* s) { shells_ = s; }
    void set_rect_tracker(RectTracker* r) { rect_ = r; }

    EngineOutputs run(const SiteSet& initial, const StopRule& stop) {
        if (!initial.is_subset_of(box_))
            throw std::invalid_argument("simulate: initial set not inside box");
        std::unique_ptr<ShellTracker> own_shells;
        std::unique_ptr<RectTracker> own_rect;
        if (stop.kind == StopKind::square_filled && !shells_) {
            own_shells = std::make_unique<ShellTracker>(stop.m);
            shells_ = own_shells.get();
        }
        if (stop.kind == StopKind::rect_reached && !rect_) {
            own_rect = std::make_unique<RectTracker>(stop.m);
            rect_ = own_rect.get();
        }
        for (const Site& s : initial.sorted()) infect(index_of(s.x, s.y), 0.0, Cause::nucleation, false);
        EngineOutputs out;
        if (stop_satisfied(stop)) {
            out.stop_time = 0.0;
            return out;
        }
        double now = 0.0;
        while (true) {
            while (!heap_.empty()) {
                const ClockEntry& top = heap_.top();
                const std::size_t i = static_cast<std::size_t>(top.idx);
                if (state_[i] != 0 || top.epoch != epoch_[i])
                    heap_.pop();
                else
                    break;
            }
            const double t_clock = heap_.empty() ? kInf : heap_.top().t;
            double t_nuc = kInf;
            if (nucleation_ && eligible_ > 0)
                t_nuc = now + rng_.exponential(params_.n / static_cast<double>(eligible_));
            const double t_next = std::min(t_clock, t_nuc);
            if (stop.kind == StopKind::time_horizon && t_next > stop.T) {
                out.outcome = TraceOutcome::stopped;
                out.stop_time = stop.T;
                out.events = events_;
                return out;
            }
            if (t_next == kInf) {
                out.outcome = TraceOutcome::stalled;
                out.stop_time = now;
                out.events = events_;
                return out;
            }
            if (events_ >= budget_) {
                out.outcome = TraceOutcome::budget_exhausted;
                out.stop_time = now;
                out.events = events_;
                return out;
            }
            now = t_next;
            if (t_nuc <= t_clock) {
                infect(pick_eligible(), now, Cause::nucleation, true);
            } else {
                const ClockEntry e = heap_.top();
                heap_.pop();
                const Cause c = nbr_[static_cast<std::size_t>(e.idx)] >= 2 ? Cause::two_neighbour
                                                                           : Cause::one_neighbour;
                infect(e.idx, now, c, true);
            }
            ++events_;
            if (stop_satisfied(stop)) {
                out.outcome = TraceOutcome::stopped;
                out.stop_time = now;
                out.events = events_;
                return out;
            }
        }
    }

private:
    std::int64_t index_of(std::int64_t x, std::int64_t y) const {
        return (x - box_.x0) + w_ * (y - box_.y0);
    }
    Site site_of(std::int64_t idx) const {
        return Site{box_.x0 + idx % w_, box_.y0 + idx / w_};
    }

    void infect(std::int64_t idx, double t, Cause cause, bool record) {
        const std::size_t i = static_cast<std::size_t>(idx);
        state_[i] = 1;
        ++infected_;
        if (nbr_[i] == 0)
            --eligible_;
        else
            --frontier_;
        ++epoch_[i];
        const Site s = site_of(idx);
        if (record && trace_) trace_->push_back(Event{t, s, cause});
        if (shells_) shells_->insert(s, t);
        if (rect_ && !rect_->done()) rect_->insert(s, t);
        static const std::int64_t dx[4] = {1, -1, 0, 0};
        static const std::int64_t dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            const std::int64_t nx = s.x + dx[d], ny = s.y + dy[d];
            if (nx < box_.x0 || nx > box_.x1 || ny < box_.y0 || ny > box_.y1) continue;
            const std::int64_t j = index_of(nx, ny);
            const std::size_t ju = static_cast<std::size_t>(j);
            if (state_[ju]) continue;
            const std::uint8_t old = nbr_[ju]++;
            if (old == 0) {
                ++frontier_;
                --eligible_;
                heap_.push(ClockEntry{t + rng_.exponential(params_.n / params_.k), j, epoch_[ju]});
            } else if (old == 1) {
                ++epoch_[ju];
                heap_.push(ClockEntry{t + rng_.exponential(1.0), j, epoch_[ju]});
            }
        }
    }

    // Uniform over healthy 0-neighbour sites: rejection sampling while the
    // eligible fraction is healthy, deterministic row-major scan otherwise.
    std::int64_t pick_eligible() {
        if (eligible_ * 8 >= area_) {
            while (true) {
                const std::int64_t x = rng_.uniform_in(box_.x0, box_.x1);
                const std::int64_t y = rng_.uniform_in(box_.y0, box_.y1);
                const std::int64_t idx = index_of(x, y);
                const std::size_t i = static_cast<std::size_t>(idx);
                if (state_[i] == 0 && nbr_[i] == 0) return idx;
            }
        }
        std::int64_t target = static_cast<std::int64_t>(
            rng_.uniform_below(static_cast<std::uint64_t>(eligible_)));
        for (std::int64_t idx = 0; idx < area_; ++idx) {
            const std::size_t i = static_cast<std::size_t>(idx);
            if (state_[i] == 0 && nbr_[i] == 0 && target-- == 0) return idx;
        }
        throw std::logic_error("pick_eligible: bookkeeping mismatch");
    }

    bool stop_satisfied(const StopRule& stop) const {
        switch (stop.kind) {
            case StopKind::origin_infected:
                return origin_idx_ >= 0 && state_[static_cast<std::size_t>(origin_idx_)] != 0;
            case StopKind::square_filled:
                return shells_->filled_radius() >= stop.m;
            case StopKind::rect_reached:
                return rect_->best_phi() >= stop.m;
            case StopKind::box_filled:
                return infected_ == area_;
            case StopKind::time_horizon:
                return false;  // handled in the event loop
        }
        return false;
    }

    ProcessParams params_;
    Rect box_;
    Rng rng_;
    std::uint64_t budget_;
    std::int64_t w_ = 0, area_ = 0;
    std::vector<std::uint8_t> state_, nbr_;
    std::vector<std::uint32_t> epoch_;
    std::priority_queue<ClockEntry, std::vector<ClockEntry>, ClockLater> heap_;
    std::int64_t infected_ = 0, frontier_ = 0, eligible_ = 0;
    std::int64_t origin_idx_ = -1;
    std::uint64_t events_ = 0;
    bool nucleation_ = false;
    std::vector<Event>* trace_ = nullptr;
    ShellTracker* shells_ = nullptr;
    RectTracker* rect_ = nullptr;
};

TraceOutcome to_outcome(const EngineOutputs& out) { return out.outcome; }

void throw_if_incomplete(const EngineOutputs& out, const char* what) {
    if (out.outcome == TraceOutcome::budget_exhausted)
        throw BudgetError(std::string(what) + ": event budget exhausted");
    if (out.outcome == TraceOutcome::stalled)
        throw StalledError(std::string(what) + ": no further events possible");
}

}  // namespace

EventTrace simulate(const ProcessParams& params, const SiteSet& initial, const StopRule& stop,
                    std::uint64_t seed, const SimOptions& opts) {
    EventTrace trace;
    trace.params = params;
    trace.seed = seed;
    trace.stop = stop;
    Engine engine(params, seed, opts);
    engine.set_trace(&trace.events);
    EngineOutputs out = engine.run(initial, stop);
    trace.outcome = to_outcome(out);
    trace.stop_time = out.stop_time;
    return trace;
}

double relaxation_time(const ProcessParams& params, std::uint64_t seed, const SimOptions& opts) {
    if (params.flavor != Flavor::DS)
        throw std::invalid_argument("relaxation_time: requires the DS flavor");
    if (!params.box.contains(Site{0, 0}))
        throw std::invalid_argument("relaxation_time: box must contain the origin");
    Engine engine(params, seed, opts);
    EngineOutputs out = engine.run(SiteSet{}, StopRule::origin_infected());
    throw_if_incomplete(out, "relaxation_time");
    return out.stop_time;
}

DropletTimes droplet_times(const ProcessParams& params, std::int64_t m, std::uint64_t seed,
                           const SimOptions& opts) {
    if (params.flavor != Flavor::KS)
        throw std::invalid_argument("droplet_times: requires the KS flavor");
    if (m < 1) throw std::invalid_argument("droplet_times: m must be positive");
    if (!params.box.contains(centred_square(m + 1)))
        throw std::invalid_argument("droplet_times: box must cover S(m+1)");
    Engine engine(params, seed, opts);
    ShellTracker shells(m);
    RectTracker rect(std::max<std::int64_t>(m, 2));
    engine.set_shell_tracker(&shells);
    engine.set_rect_tracker(&rect);
    EngineOutputs out = engine.run(SiteSet{Site{0, 0}}, StopRule::square_filled(m));
    throw_if_incomplete(out, "droplet_times");
    DropletTimes result;
    result.m = m;
    result.t_minus = shells.t_minus();
    result.t_plus = shells.t_plus();
    result.t_rect.assign(rect.crossing_times().begin(),
                         rect.crossing_times().begin() + static_cast<std::ptrdiff_t>(m) + 1);
    return result;
}

std::string trace_to_jsonl(const EventTrace& trace) {
    static const char* stop_names[] = {"origin_infected", "square_filled", "rect_reached",
                                       "time_horizon", "box_filled"};
    static const char* outcome_names[] = {"stopped", "budget_exhausted", "stalled"};
    std::string out;
    char buf[384];
    std::snprintf(buf, sizeof(buf),
                  "{\"params\":{\"n\":%.17g,\"k\":%.17g,\"box\":[%lld,%lld,%lld,%lld],"
                  "\"flavor\":\"%s\"},\"seed\":%llu,"
                  "\"stop\":{\"kind\":\"%s\",\"m\":%lld,\"T\":%.17g},"
                  "\"outcome\":\"%s\",\"stop_time\":%.17g}\n",
                  trace.params.n, trace.params.k, static_cast<long long>(trace.params.box.x0),
                  static_cast<long long>(trace.params.box.y0),
                  static_cast<long long>(trace.params.box.x1),
                  static_cast<long long>(trace.params.box.y1), flavor_name(trace.params.flavor),
                  static_cast<unsigned long long>(trace.seed),
                  stop_names[static_cast<int>(trace.stop.kind)],
                  static_cast<long long>(trace.stop.m), trace.stop.T,
                  outcome_names[static_cast<int>(trace.outcome)], trace.stop_time);
    out += buf;
    for (const Event& e : trace.events) {
        std::snprintf(buf, sizeof(buf), "{\"t\":%.17g,\"x\":%lld,\"y\":%lld,\"cause\":\"%s\"}\n",
                      e.t, static_cast<long long>(e.site.x), static_cast<long long>(e.site.y),
                      cause_name(e.cause));
        out += buf;
    }
    return out;
}

}  // namespace nucgrow
