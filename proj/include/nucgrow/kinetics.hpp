#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nucgrow/bootstrap.hpp"
#include "nucgrow/lattice.hpp"

namespace nucgrow {

// Process variants. DS is the full nucleation-and-growth dynamic
// (rates 1/n, k/n, 1 by infected-neighbour count); KS grows from the
// initial set only; ModifiedKS additionally makes 2-neighbour infections
// instantaneous; GenerousHalfPlane is the upward-growth over-approximation
// started from a half-plane.
enum class Flavor { DS, KS, ModifiedKS, GenerousHalfPlane };

const char* flavor_name(Flavor f);
Flavor flavor_from_name(const std::string& name);

struct ProcessParams {
    double n = 1.0;
    double k = 1.0;
    Rect box;
    Flavor flavor = Flavor::DS;

    void validate() const {
        if (!(n >= 1.0)) throw std::invalid_argument("ProcessParams: n must be >= 1");
        if (!(k >= 1.0) || !(k <= n))
            throw std::invalid_argument("ProcessParams: need 1 <= k <= n");
    }
};

enum class StopKind { origin_infected, square_filled, rect_reached, time_horizon, box_filled };

struct StopRule {
    StopKind kind = StopKind::origin_infected;
    std::int64_t m = 0;  // square_filled / rect_reached parameter
    double T = 0.0;      // time_horizon parameter

    static StopRule origin_infected() { return {StopKind::origin_infected, 0, 0.0}; }
    static StopRule square_filled(std::int64_t m) { return {StopKind::square_filled, m, 0.0}; }
    static StopRule rect_reached(std::int64_t m) { return {StopKind::rect_reached, m, 0.0}; }
    static StopRule time_horizon(double T) { return {StopKind::time_horizon, 0, T}; }
    static StopRule box_filled() { return {StopKind::box_filled, 0, 0.0}; }
};

enum class Cause { nucleation, one_neighbour, two_neighbour, instantaneous };

const char* cause_name(Cause c);

struct Event {
    double t = 0.0;
    Site site;
    Cause cause = Cause::nucleation;
};

enum class TraceOutcome { stopped, budget_exhausted, stalled };

struct EventTrace {
    ProcessParams params;
    std::uint64_t seed = 0;
    StopRule stop;
    std::vector<Event> events;
    TraceOutcome outcome = TraceOutcome::stopped;
    double stop_time = 0.0;
};

struct SimOptions {
    std::uint64_t budget = 100000000ull;  // explicit error past this, never truncation
};

struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct StalledError : std::runtime_error {
    explicit StalledError(const std::string& what) : std::runtime_error(what) {}
};

// Exact realization of the continuous-time chain on params.box; the trace
// is reproducible bit-for-bit from (params, initial, stop, seed). Handles
// the DS and KS flavors; the modified and half-plane processes have
// dedicated entry points below.
EventTrace simulate(const ProcessParams& params, const SiteSet& initial,
                    const StopRule& stop, std::uint64_t seed, const SimOptions& opts = {});

// Time at which the origin is infected, starting from the all-healthy
// state (DS flavor). Throws BudgetError / StalledError on non-completion.
double relaxation_time(const ProcessParams& params, std::uint64_t seed,
                       const SimOptions& opts = {});

// Cumulative droplet observables from a single growth trace:
//   t_minus[j]: first infection outside S(j-1)   (t_minus[0] == 0)
//   t_plus[j]:  all of S(j) infected
//   t_rect[j]:  some fully infected rectangle has semi-perimeter >= j
// all recorded for every j <= m.
struct DropletTimes {
    std::int64_t m = 0;
    std::vector<double> t_minus;
    std::vector<double> t_plus;
    std::vector<double> t_rect;
};

DropletTimes droplet_times(const ProcessParams& params, std::int64_t m, std::uint64_t seed,
                           const SimOptions& opts = {});

// First time the total semi-perimeter of the instantaneously-closed state
// reaches m, starting from seed set `a` (ModifiedKS flavor). Returns 0
// when the initial closed state already has total semi-perimeter >= m.
double modified_ks_time(const SiteSet& a, const ProcessParams& params, std::int64_t m,
                        std::uint64_t seed, const SimOptions& opts = {});

struct HalfPlaneResult {
    double time = 0.0;                 // first time height m is reached
    std::vector<double> level_times;   // index 1..m, first time each height is reached
    std::uint64_t events = 0;
};

// Upward growth from the lower half-plane: every infected site pushes up
// at rate k/n, sideways at rate 1, and downward instantly. Lateral window
// of 2*halfwidth+1 columns with periodic wrap.
HalfPlaneResult generous_halfplane_run(const ProcessParams& params, std::int64_t m,
                                       std::int64_t halfwidth, std::uint64_t seed,
                                       const SimOptions& opts = {});

double generous_halfplane_time(const ProcessParams& params, std::int64_t m,
                               std::int64_t halfwidth, std::uint64_t seed,
                               const SimOptions& opts = {});

struct RandomRectanglesResult {
    SiteSet nucleations;
    std::vector<Rect> spanned;       // every rectangle that ever appears, creation order
    std::vector<MergeRecord> merges;
    std::vector<Rect> final_rects;
    std::int64_t one_neighbour_infections = 0;
};

// Time-frozen coupling: sample the nucleation set by time t, run the merge
// process, then alternate 1-neighbour infections (at the collection's
// boundary rate) with frozen-time merge closures for an additional
// duration t.
RandomRectanglesResult random_rectangles_process(const ProcessParams& params, double t,
                                                 std::uint64_t seed);

struct GenerousState {
    std::vector<Rect> rects;
    std::int64_t iteration = 0;
};

struct GenerousResult {
    SiteSet nucleations;
    std::vector<GenerousState> states;  // state after each iteration, index 0 = initial
    std::vector<Rect> spanned;
    std::vector<MergeRecord> merges;
    std::vector<Rect> final_rects;
    std::int64_t iterations = 0;
    std::int64_t initial_halfwidth = 0;
    std::int64_t merge_radius = 0;
    std::int64_t enlargement = 0;
};

// Deterministic given the nucleation set: squares of half-width
// round(100 n^(1/4)) on each nucleation, then ceil(t sqrt(k) / n^(3/4))
// rounds of (merge within round(500 n^(1/4)), enlarge sides by
// round(200 n^(1/4))).
GenerousResult generous_rectangles_from(const SiteSet& nucleations,
                                        const ProcessParams& params, double t);

GenerousResult generous_rectangles_process(const ProcessParams& params, double t,
                                           std::uint64_t seed);

// Fraction of replicas in which the time-t infected set of the full
// process is covered by the union of final generous rectangles built from
// the same realized nucleations.
double containment_check(const ProcessParams& params, double t, std::int64_t replicas,
                         std::uint64_t seed, const SimOptions& opts = {});

// JSON-lines trace: a header record {params, seed, stop} then one record
// per event.
std::string trace_to_jsonl(const EventTrace& trace);

}  // namespace nucgrow
