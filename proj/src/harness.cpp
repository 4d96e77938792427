#include "nucgrow/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "nucgrow/analytics.hpp"
#include "nucgrow/bootstrap.hpp"
#include "nucgrow/kinetics.hpp"
#include "nucgrow/rng.hpp"
#include "nucgrow/stats.hpp"

#ifndef NUCGROW_GIT_REV
#define NUCGROW_GIT_REV "unknown"
#endif

namespace nucgrow {

std::string code_version() { return NUCGROW_GIT_REV; }

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    const int nthreads = std::min<int>(jobs, static_cast<int>(count));
    threads.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void write_file(const std::string& path, const std::string& text) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

namespace {

struct RunRecord {
    std::string id;
    std::uint64_t seed = 0;
    std::string outcome = "ok";
    double wall_ms = 0.0;
};

// Plans derived seeds up front (checking distinctness across the whole
// manifest) and collects per-run outcomes for the JSON manifest.
class Manifest {
public:
    explicit Manifest(std::uint64_t base_seed) : base_(base_seed) {}

    std::uint64_t plan(const std::string& id, std::uint64_t axis, std::uint64_t replica,
                       std::uint64_t replicas_per_axis) {
        const std::uint64_t seed = derive_seed(base_, axis * replicas_per_axis + replica);
        if (!seen_.insert(seed).second)
            throw std::runtime_error("manifest: derived seed collision for run " + id);
        records_.push_back(RunRecord{id, seed, "planned", 0.0});
        return seed;
    }

    void record(std::size_t index, const std::string& outcome, double wall_ms) {
        records_[index].outcome = outcome;
        records_[index].wall_ms = wall_ms;
    }

    std::size_t size() const { return records_.size(); }
    const std::vector<RunRecord>& records() const { return records_; }

    std::string to_json(const Config& cfg) const {
        char buf[160];
        std::string out = "{\n";
        std::snprintf(buf, sizeof(buf), "  \"config_hash\": \"%016llx\",\n",
                      static_cast<unsigned long long>(cfg.hash()));
        out += buf;
        out += "  \"code_version\": \"" + code_version() + "\",\n";
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        std::snprintf(buf, sizeof(buf), "  \"generated_unix_ms\": %lld,\n",
                      static_cast<long long>(
                          std::chrono::duration_cast<std::chrono::milliseconds>(now).count()));
        out += buf;
        out += "  \"runs\": [\n";
        for (std::size_t i = 0; i < records_.size(); ++i) {
            const RunRecord& r = records_[i];
            std::snprintf(buf, sizeof(buf),
                          "    {\"id\": \"%s\", \"seed\": %llu, \"outcome\": \"%s\", "
                          "\"wall_ms\": %.3f}%s\n",
                          r.id.c_str(), static_cast<unsigned long long>(r.seed),
                          r.outcome.c_str(), r.wall_ms, i + 1 == records_.size() ? "" : ",");
            out += buf;
        }
        out += "  ]\n}\n";
        return out;
    }

private:
    std::uint64_t base_;
    std::set<std::uint64_t> seen_;
    std::vector<RunRecord> records_;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::uint64_t base_seed_of(const Config& cfg, const GlobalOpts& opts) {
    if (opts.seed_override) return *opts.seed_override;
    return cfg.get_u64("base_seed");
}

SimOptions sim_options(const Config& cfg, const GlobalOpts& opts) {
    SimOptions sim;
    if (opts.budget_override)
        sim.budget = *opts.budget_override;
    else
        sim.budget = cfg.get_u64("budget", sim.budget);
    return sim;
}

std::string run_label(const std::string& prefix, std::size_t axis, std::size_t replica) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s_a%03zu_r%05zu", prefix.c_str(), axis, replica);
    return buf;
}

}  // namespace

int cmd_tau(const Config& cfg, const GlobalOpts& opts) {
    const auto ns = cfg.get_double_list("n");
    const auto ks = cfg.get_double_list("k");
    const std::int64_t halfwidth = cfg.get_int("box_halfwidth");
    const std::int64_t replicas = cfg.get_int("replicas");
    const std::uint64_t base = base_seed_of(cfg, opts);
    const SimOptions sim = sim_options(cfg, opts);
    if (replicas < 1) throw ConfigError("tau: replicas must be >= 1");

    struct Point {
        double n, k;
    };
    std::vector<Point> points;
    for (double n : ns)
        for (double k : ks) points.push_back({n, k});

    Manifest manifest(base);
    struct Job {
        std::size_t axis, replica;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::int64_t r = 0; r < replicas; ++r) {
            std::uint64_t seed = manifest.plan(run_label("tau", a, static_cast<std::size_t>(r)),
                                               a, static_cast<std::uint64_t>(r),
                                               static_cast<std::uint64_t>(replicas));
            jobs.push_back({a, static_cast<std::size_t>(r), seed});
        }

    struct Outcome {
        std::optional<double> value;
        std::string status = "ok";
        double wall_ms = 0.0;
        std::string trace;
    };
    std::vector<Outcome> results(jobs.size());
    parallel_for(jobs.size(), opts.jobs, [&](std::size_t i) {
        const Job& job = jobs[i];
        ProcessParams params{points[job.axis].n, points[job.axis].k,
                             centred_square(halfwidth), Flavor::DS};
        const auto start = std::chrono::steady_clock::now();
        try {
            if (opts.trace) {
                EventTrace tr = simulate(params, SiteSet{}, StopRule::origin_infected(),
                                         job.seed, sim);
                if (tr.outcome == TraceOutcome::stopped) {
                    results[i].value = tr.stop_time;
                    results[i].trace = trace_to_jsonl(tr);
                } else {
                    results[i].status = "budget";
                }
            } else {
                results[i].value = relaxation_time(params, job.seed, sim);
            }
        } catch (const BudgetError&) {
            results[i].status = "budget";
        }
        results[i].wall_ms = elapsed_ms(start);
    });

    SampleTable table;
    bool censored = false;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& job = jobs[i];
        manifest.record(i, results[i].status, results[i].wall_ms);
        censored |= results[i].status == "budget";
        table.append(SampleRow{run_label("tau", job.axis, job.replica), job.seed,
                               points[job.axis].n, points[job.axis].k, halfwidth, "DS", "tau", 0,
                               results[i].value, results[i].status});
        if (opts.trace && !results[i].trace.empty())
            write_file(opts.out_dir + "/trace_" + run_label("tau", job.axis, job.replica) +
                           ".jsonl",
                       results[i].trace);
    }

    // Comparison table against the regime predictions; the predictions are
    // also appended as sample rows so downstream consumers see one schema.
    std::string summary =
        "n,k,regime,tau_predicted,tau_median,ci_low,ci_high,ratio_median_over_predicted,"
        "censored\n";
    for (std::size_t a = 0; a < points.size(); ++a) {
        auto vals = table.values("tau", [&](const SampleRow& r) {
            return r.n == points[a].n && r.k == points[a].k;
        });
        std::int64_t cens = replicas - static_cast<std::int64_t>(vals.size());
        RegimePrediction pred = predict_tau(points[a].n, points[a].k);
        table.append(SampleRow{run_label("tau_pred", a, 0), base, points[a].n, points[a].k,
                               halfwidth, "DS", "tau_predicted", 0, pred.tau_predicted, "ok"});
        summary += format_double(points[a].n) + "," + format_double(points[a].k) + ",";
        summary += regime_name(pred.regime);
        summary += "," + format_double(pred.tau_predicted);
        if (vals.size() >= 20) {
            QuantileEstimate q = quantile_with_ci(vals, 0.5);
            summary += "," + format_double(q.point) + "," + format_double(q.ci_low) + "," +
                       format_double(q.ci_high) + "," +
                       format_double(q.point / pred.tau_predicted);
        } else {
            summary += ",,,,";
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), ",%lld\n", static_cast<long long>(cens));
        summary += buf;
    }

    write_file(opts.out_dir + "/tau_samples.csv", table.to_csv());
    write_file(opts.out_dir + "/tau_summary.csv", summary);
    write_file(opts.out_dir + "/tau_manifest.json", manifest.to_json(cfg));
    return kExitOk;
}

int cmd_droplet(const Config& cfg, const GlobalOpts& opts) {
    const double n = cfg.get_double("n");
    const double k = cfg.get_double("k");
    const std::int64_t m_max = cfg.get_int("m_max");
    const auto record_ms = cfg.get_int_list("m_record");
    const std::int64_t replicas = cfg.get_int("replicas");
    const std::int64_t halfwidth = cfg.get_int("box_halfwidth", m_max + 1);
    const std::uint64_t base = base_seed_of(cfg, opts);
    const SimOptions sim = sim_options(cfg, opts);
    for (std::int64_t m : record_ms)
        if (m < 0 || m > m_max) throw ConfigError("droplet: m_record entries must lie in [0, m_max]");

    Manifest manifest(base);
    std::vector<std::uint64_t> seeds;
    for (std::int64_t r = 0; r < replicas; ++r)
        seeds.push_back(manifest.plan(run_label("droplet", 0, static_cast<std::size_t>(r)), 0,
                                      static_cast<std::uint64_t>(r),
                                      static_cast<std::uint64_t>(replicas)));

    struct Outcome {
        std::optional<DropletTimes> times;
        std::string status = "ok";
        double wall_ms = 0.0;
    };
    std::vector<Outcome> results(static_cast<std::size_t>(replicas));
    ProcessParams params{n, k, centred_square(halfwidth), Flavor::KS};
    parallel_for(results.size(), opts.jobs, [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        try {
            results[i].times = droplet_times(params, m_max, seeds[i], sim);
            if (opts.trace) {
                // Same seed, same engine: the trace replays the identical
                // trajectory the observables came from.
                EventTrace tr = simulate(params, SiteSet{Site{0, 0}},
                                         StopRule::square_filled(m_max), seeds[i], sim);
                write_file(opts.out_dir + "/trace_" + run_label("droplet", 0, i) + ".jsonl",
                           trace_to_jsonl(tr));
            }
        } catch (const BudgetError&) {
            results[i].status = "budget";
        }
        results[i].wall_ms = elapsed_ms(start);
    });

    SampleTable table;
    for (std::size_t i = 0; i < results.size(); ++i) {
        manifest.record(i, results[i].status, results[i].wall_ms);
        const std::string id = run_label("droplet", 0, i);
        if (!results[i].times.has_value()) {
            table.append(SampleRow{id, seeds[i], n, k, halfwidth, "KS", "t_plus", m_max,
                                   std::nullopt, "budget"});
            continue;
        }
        const DropletTimes& dt = *results[i].times;
        for (std::int64_t m : record_ms) {
            const auto mi = static_cast<std::size_t>(m);
            table.append(SampleRow{id, seeds[i], n, k, halfwidth, "KS", "t_minus", m,
                                   dt.t_minus[mi], "ok"});
            table.append(SampleRow{id, seeds[i], n, k, halfwidth, "KS", "t_plus", m,
                                   dt.t_plus[mi], "ok"});
            if (m >= 2)
                table.append(SampleRow{id, seeds[i], n, k, halfwidth, "KS", "t_rect", m,
                                       dt.t_rect[mi], "ok"});
        }
    }

    std::string summary =
        "m,observable,median,ci_low,ci_high,predicted_accelerating,predicted_terminal,phase\n";
    for (std::int64_t m : record_ms) {
        if (m < 2) continue;
        for (const char* obs : {"t_minus", "t_plus", "t_rect"}) {
            auto vals = table.values(obs, [&](const SampleRow& r) { return r.m == m; });
            if (vals.size() < 20) continue;
            QuantileEstimate q = quantile_with_ci(vals, 0.5);
            DropletPrediction pred = predict_droplet(n, k, m);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%lld,%s,", static_cast<long long>(m), obs);
            summary += buf;
            summary += format_double(q.point) + "," + format_double(q.ci_low) + "," +
                       format_double(q.ci_high) + "," + format_double(pred.accelerating) + "," +
                       format_double(pred.terminal) + "," + droplet_phase_name(pred.phase) + "\n";
        }
    }

    write_file(opts.out_dir + "/droplet_samples.csv", table.to_csv());
    write_file(opts.out_dir + "/droplet_summary.csv", summary);
    write_file(opts.out_dir + "/droplet_manifest.json", manifest.to_json(cfg));
    return kExitOk;
}

int cmd_bootstrap(const Config& cfg, const GlobalOpts& opts) {
    const auto halfwidths = cfg.get_int_list("pc_halfwidths");
    const std::int64_t pc_replicas = cfg.get_int("pc_replicas");
    const std::int64_t ratio = cfg.get_int("coarse_ratio");
    const auto coarse_ps = cfg.get_double_list("coarse_p");
    const std::int64_t coarse_replicas = cfg.get_int("coarse_replicas");
    const std::uint64_t base = base_seed_of(cfg, opts);

    Manifest manifest(base);
    SampleTable table;

    std::vector<std::uint64_t> pc_seeds;
    for (std::size_t a = 0; a < halfwidths.size(); ++a)
        pc_seeds.push_back(manifest.plan(run_label("pc", a, 0), a, 0, 1));
    std::vector<double> pc_hats(halfwidths.size());
    parallel_for(halfwidths.size(), opts.jobs, [&](std::size_t a) {
        const auto start = std::chrono::steady_clock::now();
        pc_hats[a] = estimate_pc(halfwidths[a], pc_replicas, pc_seeds[a]);
        manifest.record(a, "ok", elapsed_ms(start));
    });
    for (std::size_t a = 0; a < halfwidths.size(); ++a)
        table.append(SampleRow{run_label("pc", a, 0), pc_seeds[a], 0.0, 0.0, halfwidths[a],
                               "bootstrap", "pc_hat", 0, pc_hats[a], "ok"});

    // Coarse-grid fill curve with common random numbers across the p sweep.
    const std::size_t pc_jobs = manifest.size();
    for (std::int64_t r = 0; r < coarse_replicas; ++r)
        manifest.plan(run_label("coarse", 0, static_cast<std::size_t>(r)), halfwidths.size(),
                      static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(coarse_replicas));
    std::string coarse_csv = "p,fill_fraction,mean_rounds\n";
    for (std::size_t pi = 0; pi < coarse_ps.size(); ++pi) {
        std::int64_t filled = 0;
        double rounds = 0.0;
        for (std::int64_t r = 0; r < coarse_replicas; ++r) {
            const std::uint64_t seed =
                manifest.records()[pc_jobs + static_cast<std::size_t>(r)].seed;
            CoarseGrid grid{ratio, 1, coarse_ps[pi]};
            CoarseResult res = coarse_bootstrap(grid, seed);
            filled += res.percolated ? 1 : 0;
            rounds += static_cast<double>(res.rounds);
        }
        for (std::int64_t r = 0; r < coarse_replicas; ++r)
            manifest.record(pc_jobs + static_cast<std::size_t>(r), "ok", 0.0);
        coarse_csv += format_double(coarse_ps[pi]) + "," +
                      format_double(static_cast<double>(filled) /
                                    static_cast<double>(coarse_replicas)) +
                      "," +
                      format_double(rounds / static_cast<double>(coarse_replicas)) + "\n";
    }

    std::string summary = "halfwidth,side,pc_hat,pc_times_log_side,threshold_constant\n";
    for (std::size_t a = 0; a < halfwidths.size(); ++a) {
        const double side = static_cast<double>(2 * halfwidths[a] + 1);
        summary += format_double(static_cast<double>(halfwidths[a])) + "," +
                   format_double(side) + "," + format_double(pc_hats[a]) + "," +
                   format_double(pc_hats[a] * std::log(side)) + "," +
                   format_double(M_PI * M_PI / 18.0) + "\n";
    }

    write_file(opts.out_dir + "/bootstrap_samples.csv", table.to_csv());
    write_file(opts.out_dir + "/bootstrap_pc_summary.csv", summary);
    write_file(opts.out_dir + "/bootstrap_coarse.csv", coarse_csv);
    write_file(opts.out_dir + "/bootstrap_manifest.json", manifest.to_json(cfg));
    return kExitOk;
}

namespace detail_couple {

// First time the droplet contains a fully infected rectangle of
// semi-perimeter >= m, from a single origin seed.
double sample_rect_time(const ProcessParams& params, std::int64_t m, std::uint64_t seed,
                        const SimOptions& sim) {
    EventTrace tr = simulate(params, SiteSet{Site{0, 0}}, StopRule::rect_reached(m), seed, sim);
    if (tr.outcome != TraceOutcome::stopped)
        throw BudgetError("sample_rect_time: incomplete run");
    return tr.stop_time;
}

// Sum of side-arrival clocks Y_i ~ Exp(n/2ki), i in [lo, m].
double sample_growth_sum(double n, double k, std::int64_t lo, std::int64_t m, Rng& rng) {
    double total = 0.0;
    for (std::int64_t i = std::max<std::int64_t>(lo, 1); i <= m; ++i)
        total += rng.exponential(n / (2.0 * k * static_cast<double>(i)));
    return total;
}

double sample_upper_bound(double n, double k, std::int64_t m, Rng& rng) {
    double total = sample_growth_sum(n, k, 2, m, rng);
    for (std::int64_t i = 0; i < m * m; ++i) total += rng.exponential(1.0);
    return total;
}

// ell seeds far enough apart that their droplets stay disjoint while the
// total semi-perimeter is below m.
SiteSet isolated_seeds(std::int64_t ell, std::int64_t m) {
    SiteSet a;
    for (std::int64_t j = 0; j < ell; ++j) a.insert(Site{j * 10 * m, 0});
    return a;
}

}  // namespace detail_couple

int cmd_couple(const Config& cfg, const GlobalOpts& opts) {
    const double n = cfg.get_double("n");
    const double k = cfg.get_double("k");
    const std::int64_t m = cfg.get_int("m");
    const std::int64_t replicas = cfg.get_int("replicas");
    const auto ells = cfg.get_int_list("ell");
    const std::uint64_t base = base_seed_of(cfg, opts);
    const SimOptions sim = sim_options(cfg, opts);
    const double band = 2.0 * ecdf_band(replicas, 3.0);

    Manifest manifest(base);
    SampleTable table;
    const std::int64_t hw = m + 10;

    std::vector<std::uint64_t> seeds;
    for (std::int64_t r = 0; r < replicas; ++r)
        seeds.push_back(manifest.plan(run_label("couple", 0, static_cast<std::size_t>(r)), 0,
                                      static_cast<std::uint64_t>(r),
                                      static_cast<std::uint64_t>(replicas)));

    // Growth time vs the coupled upper-bound sum.
    std::vector<double> tm(seeds.size()), upper(seeds.size());
    ProcessParams ks{n, k, centred_square(hw), Flavor::KS};
    parallel_for(seeds.size(), opts.jobs, [&](std::size_t i) {
        tm[i] = detail_couple::sample_rect_time(ks, m, seeds[i], sim);
        Rng rng(derive_seed(seeds[i], 1));
        upper[i] = detail_couple::sample_upper_bound(n, k, m, rng);
    });
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        manifest.record(i, "ok", 0.0);
        table.append(SampleRow{run_label("couple", 0, i), seeds[i], n, k, hw, "KS", "T_m", m,
                               tm[i], "ok"});
        table.append(SampleRow{run_label("couple", 0, i), seeds[i], n, k, hw, "KS",
                               "bound_upper", m, upper[i], "ok"});
    }

    std::string summary = "check,ell,max_cdf_excess,band,pass\n";
    bool all_pass = true;
    {
        const double excess = ecdf_max_excess(upper, tm);
        const bool pass = excess <= band;
        all_pass &= pass;
        summary += "upper_dominance,0," + format_double(excess) + "," + format_double(band) +
                   (pass ? ",1\n" : ",0\n");
    }

    // Modified-process time vs the coupled lower-bound sum, per ell.
    for (std::size_t ei = 0; ei < ells.size(); ++ei) {
        const std::int64_t ell = ells[ei];
        SiteSet a = detail_couple::isolated_seeds(ell, m);
        const std::int64_t mhw = 10 * m * std::max<std::int64_t>(ell, 1) + 2 * m;
        ProcessParams mod{n, k, centred_square(mhw), Flavor::ModifiedKS};
        std::vector<double> tstar(seeds.size()), lower(seeds.size());
        parallel_for(seeds.size(), opts.jobs, [&](std::size_t i) {
            const std::uint64_t s = derive_seed(seeds[i], 100 + ei);
            tstar[i] = modified_ks_time(a, mod, m, s, sim);
            Rng rng(derive_seed(s, 1));
            // Waits happen at total semi-perimeters 2*ell .. m-1; the last
            // arrival lands the state at m.
            lower[i] = detail_couple::sample_growth_sum(n, k, 2 * ell, m - 1, rng);
        });
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            table.append(SampleRow{run_label("couple", ei + 1, i), seeds[i], n, k, mhw,
                                   "ModifiedKS", "T_star_m", m, tstar[i], "ok"});
            table.append(SampleRow{run_label("couple", ei + 1, i), seeds[i], n, k, mhw,
                                   "ModifiedKS", "bound_lower", m, lower[i], "ok"});
        }
        const double excess = ecdf_max_excess(tstar, lower);
        const bool pass = excess <= band;
        all_pass &= pass;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "lower_dominance,%lld,", static_cast<long long>(ell));
        summary += buf;
        summary += format_double(excess) + "," + format_double(band) + (pass ? ",1\n" : ",0\n");
    }

    write_file(opts.out_dir + "/couple_samples.csv", table.to_csv());
    write_file(opts.out_dir + "/couple_summary.csv", summary);
    write_file(opts.out_dir + "/couple_manifest.json", manifest.to_json(cfg));
    return all_pass ? kExitOk : kExitPropertyFailure;
}

namespace detail_generous {

// Doubling property over a family of nested spanned rectangles: every
// spanned R and every ell <= phi(R) admits a spanned R' inside R with
// ell <= phi(R') <= 2*ell + slack.
bool spanned_doubling_holds(const std::vector<Rect>& spanned, std::int64_t slack) {
    for (const Rect& r : spanned) {
        const std::int64_t phi = semi_perimeter(r);
        for (std::int64_t ell = 1; ell <= phi; ++ell) {
            bool found = false;
            for (const Rect& cand : spanned) {
                if (!r.contains(cand)) continue;
                const std::int64_t cphi = semi_perimeter(cand);
                if (cphi >= ell && cphi <= 2 * ell + slack) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

}  // namespace detail_generous

int cmd_generous(const Config& cfg, const GlobalOpts& opts) {
    const double n = cfg.get_double("n");
    const double k = cfg.get_double("k");
    const double t = cfg.get_double("t");
    const std::int64_t replicas = cfg.get_int("replicas");
    const std::int64_t hw = cfg.get_int("box_halfwidth", std::llround(8.0 * t));
    const std::uint64_t base = base_seed_of(cfg, opts);
    const SimOptions sim = sim_options(cfg, opts);

    ProcessParams params{n, k, centred_square(hw), Flavor::DS};
    Manifest manifest(base);
    const std::uint64_t contain_seed = manifest.plan("generous_containment", 0, 0, 1);
    const double fraction = containment_check(params, t, replicas, contain_seed, sim);
    manifest.record(0, "ok", 0.0);

    bool al_ok = true;
    std::int64_t slack = 0;
    for (std::int64_t r = 0; r < replicas; ++r) {
        const std::uint64_t seed =
            manifest.plan(run_label("generous", 1, static_cast<std::size_t>(r)), 1,
                          static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(replicas));
        GenerousResult res = generous_rectangles_process(params, t, seed);
        slack = res.merge_radius;
        if (!detail_generous::spanned_doubling_holds(res.spanned, res.merge_radius)) al_ok = false;
        manifest.record(manifest.size() - 1, "ok", 0.0);
    }

    std::string summary = "containment_fraction,al_analogue_all_runs,merge_radius_slack\n";
    summary += format_double(fraction) + "," + (al_ok ? std::string("1") : std::string("0")) +
               "," + format_double(static_cast<double>(slack)) + "\n";
    write_file(opts.out_dir + "/generous_summary.csv", summary);
    write_file(opts.out_dir + "/generous_manifest.json", manifest.to_json(cfg));
    return al_ok ? kExitOk : kExitPropertyFailure;
}

}  // namespace nucgrow
