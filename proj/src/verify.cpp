#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nucgrow/analytics.hpp"
#include "nucgrow/bootstrap.hpp"
#include "nucgrow/harness.hpp"
#include "nucgrow/kinetics.hpp"
#include "nucgrow/reference.hpp"
#include "nucgrow/rng.hpp"
#include "nucgrow/stats.hpp"

namespace nucgrow {

namespace {

// --- criterion 1 helpers ------------------------------------------------

// Synchronous fixed-point closure on a padded grid, structured nothing
// like the production work-queue: the independent oracle.
SiteSet oracle_closure(const SiteSet& a, const Rect& box) {
    const std::int64_t w = box.width(), h = box.height();
    std::vector<std::uint8_t> grid(static_cast<std::size_t>(w * h), 0);
    auto at = [&](std::int64_t x, std::int64_t y) -> std::uint8_t& {
        return grid[static_cast<std::size_t>((x - box.x0) + w * (y - box.y0))];
    };
    for (const Site& s : a) at(s.x, s.y) = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Site> add;
        for (std::int64_t y = box.y0; y <= box.y1; ++y)
            for (std::int64_t x = box.x0; x <= box.x1; ++x) {
                if (at(x, y)) continue;
                int nb = 0;
                if (x > box.x0 && at(x - 1, y)) ++nb;
                if (x < box.x1 && at(x + 1, y)) ++nb;
                if (y > box.y0 && at(x, y - 1)) ++nb;
                if (y < box.y1 && at(x, y + 1)) ++nb;
                if (nb >= 2) add.push_back(Site{x, y});
            }
        for (const Site& s : add) {
            at(s.x, s.y) = 1;
            changed = true;
        }
    }
    SiteSet out;
    for (std::int64_t y = box.y0; y <= box.y1; ++y)
        for (std::int64_t x = box.x0; x <= box.x1; ++x)
            if (at(x, y)) out.insert(Site{x, y});
    return out;
}

SiteSet random_instance(Rng& rng, std::int64_t max_seeds, std::int64_t side) {
    const std::int64_t count = 1 + static_cast<std::int64_t>(
                                       rng.uniform_below(static_cast<std::uint64_t>(max_seeds)));
    SiteSet a;
    for (std::int64_t i = 0; i < count; ++i)
        a.insert(Site{static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(side))),
                      static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(side)))});
    return a;
}

SiteSet rasterize(const std::vector<RectSeedPair>& rects) {
    SiteSet out;
    for (const RectSeedPair& p : rects)
        for (std::int64_t y = p.rect.y0; y <= p.rect.y1; ++y)
            for (std::int64_t x = p.rect.x0; x <= p.rect.x1; ++x) out.insert(Site{x, y});
    return out;
}

struct CriterionCtx {
    const Config& cfg;
    const GlobalOpts& opts;
    std::uint64_t base;
    SimOptions sim;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

// --- criteria -----------------------------------------------------------

CriterionResult criterion_closure_oracle(const CriterionCtx& ctx,
                                         std::vector<RectanglesState>* keep) {
    CriterionResult res{1, "closure oracle equivalence", false, ""};
    const std::int64_t instances = ctx.cfg.get_int("c1_instances", 1000);
    const std::int64_t side = ctx.cfg.get_int("c1_side", 30);
    const std::int64_t max_seeds = ctx.cfg.get_int("c1_max_seeds", 20);
    Rng rng(derive_seed(ctx.base, 1));
    std::int64_t mismatches = 0;
    for (std::int64_t i = 0; i < instances; ++i) {
        SiteSet a = random_instance(rng, max_seeds, side);
        Rect box(0, side - 1, 0, side - 1);
        SiteSet oracle = oracle_closure(a, box);
        SiteSet product = closure(a, box);
        RectanglesState st = rectangles_process(a);
        SiteSet uni = rasterize(st.rects);
        if (!(oracle == product) || !(oracle == uni)) ++mismatches;
        if (keep && i < 200) keep->push_back(std::move(st));
    }
    res.pass = mismatches == 0;
    res.detail = fmt("%.0f instances, %.0f mismatches", static_cast<double>(instances),
                     static_cast<double>(mismatches));
    return res;
}

CriterionResult criterion_al_doubling(const std::vector<RectanglesState>& states) {
    CriterionResult res{2, "merge-scale doubling witnesses", false, ""};
    std::int64_t checked = 0, failures = 0;
    for (const RectanglesState& st : states) {
        for (const RectSeedPair& p : st.rects) {
            const std::int64_t phi = semi_perimeter(p.rect);
            for (std::int64_t ell = 1; ell <= phi; ++ell) {
                auto witness = doubling_witness(p.rect, p.seeds, ell);
                ++checked;
                if (!witness.has_value() || !p.rect.contains(*witness) ||
                    semi_perimeter(*witness) < ell || semi_perimeter(*witness) > 2 * ell)
                    ++failures;
            }
        }
    }
    res.pass = failures == 0 && checked > 0;
    res.detail = fmt("%.0f witness queries, %.0f failures", static_cast<double>(checked),
                     static_cast<double>(failures));
    return res;
}

CriterionResult criterion_engine_exactness(const CriterionCtx& ctx) {
    CriterionResult res{3, "engine vs total-rate reference (KS test)", false, ""};
    const double n = ctx.cfg.get_double("c3_n", 100.0);
    const double k = ctx.cfg.get_double("c3_k", 10.0);
    const std::int64_t hw = ctx.cfg.get_int("c3_halfwidth", 2);
    const std::int64_t samples = ctx.cfg.get_int("c3_samples", 10000);
    ProcessParams params{n, k, centred_square(hw), Flavor::DS};
    std::vector<double> engine_taus(static_cast<std::size_t>(samples));
    std::vector<double> reference_taus(static_cast<std::size_t>(samples));
    const std::uint64_t s0 = derive_seed(ctx.base, 3);
    parallel_for(engine_taus.size(), ctx.opts.jobs, [&](std::size_t i) {
        engine_taus[i] = relaxation_time(params, derive_seed(s0, i), ctx.sim);
        reference_taus[i] =
            reference_relaxation_time(params, derive_seed(s0, 1000000 + i));
    });
    const double p = ks_two_sample_pvalue(engine_taus, reference_taus);
    res.pass = p > 0.01;
    res.detail = fmt("two-sample KS p = %.4f (needs > 0.01)", p);
    return res;
}

CriterionResult criterion_poisson_identity(const CriterionCtx& ctx) {
    CriterionResult res{4, "exponential-sum / Poisson identity", false, ""};
    const double closed1 = std::fabs(exp_sum_tail(1, 2.0, 2.0) - (1.0 - std::exp(-1.0)));
    const double closed2 = std::fabs(exp_sum_tail(2, 1.0, 1.0) - (1.0 - 2.0 * std::exp(-1.0)));
    bool ok = closed1 < 1e-9 && closed2 < 1e-9;
    const std::int64_t draws = ctx.cfg.get_int("c4_draws", 100000);
    Rng rng(derive_seed(ctx.base, 4));
    double worst_z = 0.0;
    for (std::int64_t s : {1, 5, 50}) {
        for (double lambda : {0.1, 1.0, 10.0}) {
            const double t = static_cast<double>(s) * lambda;  // near the median
            std::int64_t hits = 0;
            for (std::int64_t d = 0; d < draws; ++d) {
                double sum = 0.0;
                for (std::int64_t i = 0; i < s; ++i) sum += rng.exponential(lambda);
                if (sum <= t) ++hits;
            }
            const double p = exp_sum_tail(s, lambda, t);
            const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
            const double z = std::fabs(static_cast<double>(hits) / draws - p) / sigma;
            worst_z = std::max(worst_z, z);
            if (z > 3.0) ok = false;
        }
    }
    res.pass = ok;
    res.detail = fmt("closed-form errors %.2e/%.2e, worst MC z = %.2f", closed1, closed2, worst_z);
    return res;
}

CriterionResult criterion_coupling_dominance(const CriterionCtx& ctx) {
    CriterionResult res{5, "coupling dominance (growth bounds)", false, ""};
    Config cfg;
    cfg.set("n", ctx.cfg.get_string("c5_n", "1e5"));
    cfg.set("k", ctx.cfg.get_string("c5_k", "10"));
    cfg.set("m", ctx.cfg.get_string("c5_m", "40"));
    cfg.set("replicas", ctx.cfg.get_string("c5_replicas", "2000"));
    cfg.set("ell", ctx.cfg.get_string("c5_ell", "[1, 4]"));
    cfg.set("base_seed", std::to_string(derive_seed(ctx.base, 5)));
    GlobalOpts opts = ctx.opts;
    opts.out_dir = ctx.opts.out_dir + "/c5_couple";
    const int code = cmd_couple(cfg, opts);
    res.pass = code == kExitOk;
    std::ifstream in(opts.out_dir + "/couple_summary.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    for (char& c : text)
        if (c == '\n') c = ' ';
    res.detail = text;
    return res;
}

CriterionResult criterion_droplet_band(const CriterionCtx& ctx, int id, const char* name,
                                       const char* prefix, bool accelerating) {
    CriterionResult res{id, name, false, ""};
    const double n = ctx.cfg.get_double(std::string(prefix) + "_n");
    const double k = ctx.cfg.get_double(std::string(prefix) + "_k");
    const std::int64_t m = ctx.cfg.get_int(std::string(prefix) + "_m");
    const std::int64_t replicas = ctx.cfg.get_int(std::string(prefix) + "_replicas");
    const double band_lo = ctx.cfg.get_double(std::string(prefix) + "_band_lo");
    const double band_hi = ctx.cfg.get_double(std::string(prefix) + "_band_hi");
    ProcessParams params{n, k, centred_square(m + 1), Flavor::KS};
    std::vector<double> tplus(static_cast<std::size_t>(replicas));
    const std::uint64_t s0 = derive_seed(ctx.base, static_cast<std::uint64_t>(id));
    parallel_for(tplus.size(), ctx.opts.jobs, [&](std::size_t i) {
        DropletTimes dt = droplet_times(params, m, derive_seed(s0, i), ctx.sim);
        tplus[i] = dt.t_plus[static_cast<std::size_t>(m)];
    });
    QuantileEstimate q = quantile_with_ci(tplus, 0.5);
    DropletPrediction pred = predict_droplet(n, k, m);
    const double centre = accelerating ? pred.accelerating : pred.terminal;
    res.pass = q.point >= band_lo * centre && q.point <= band_hi * centre;
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "median T+ = %.1f (CI [%.1f, %.1f]), ratio %.3f of centre %.1f, band [%.2f, %.2f]",
                  q.point, q.ci_low, q.ci_high, q.point / centre, centre, band_lo, band_hi);
    res.detail = buf;
    return res;
}

struct TauSweepResult {
    std::vector<double> ks;
    std::vector<QuantileEstimate> medians;
};

TauSweepResult tau_sweep(const CriterionCtx& ctx, double n, const std::vector<double>& ks,
                         std::int64_t halfwidth, std::int64_t replicas, std::uint64_t salt) {
    TauSweepResult out;
    out.ks = ks;
    for (std::size_t a = 0; a < ks.size(); ++a) {
        std::vector<double> taus(static_cast<std::size_t>(replicas));
        ProcessParams params{n, ks[a], centred_square(halfwidth), Flavor::DS};
        const std::uint64_t s0 = derive_seed(ctx.base, salt + a);
        parallel_for(taus.size(), ctx.opts.jobs, [&](std::size_t i) {
            taus[i] = relaxation_time(params, derive_seed(s0, i), ctx.sim);
        });
        out.medians.push_back(quantile_with_ci(taus, 0.5));
    }
    return out;
}

CriterionResult criterion_tau_regime_b(const CriterionCtx& ctx, const TauSweepResult& sweep,
                                       std::size_t k_index) {
    CriterionResult res{8, "relaxation-time regime (b) scaling", false, ""};
    const double n = ctx.cfg.get_double("c8_n", 1e6);
    const double k = sweep.ks[k_index];
    const std::int64_t hw = ctx.cfg.get_int("c8_halfwidth", 320);
    const std::int64_t replicas = ctx.cfg.get_int("c8_replicas", 200);
    const double predicted = predict_tau(n, k).tau_predicted;
    const QuantileEstimate& med = sweep.medians[k_index];
    bool pass = med.point >= predicted / 2.0 && med.point <= predicted * 2.0;

    // Doubling the box half-width must not move the median materially.
    std::vector<double> taus(static_cast<std::size_t>(replicas));
    ProcessParams params{n, k, centred_square(2 * hw), Flavor::DS};
    const std::uint64_t s0 = derive_seed(ctx.base, 80);
    parallel_for(taus.size(), ctx.opts.jobs, [&](std::size_t i) {
        taus[i] = relaxation_time(params, derive_seed(s0, i), ctx.sim);
    });
    QuantileEstimate med2 = quantile_with_ci(taus, 0.5);
    const double shift = std::fabs(med2.point - med.point) / med.point;
    pass = pass && shift < 0.10;
    res.pass = pass;
    res.detail = fmt("median = %.1f (predicted %.1f), box-doubling shift %.3f", med.point,
                     predicted, shift);
    return res;
}

CriterionResult criterion_tau_monotonicity(const TauSweepResult& sweep) {
    CriterionResult res{9, "relaxation-time monotonicity in k", false, ""};
    bool pass = sweep.medians.size() >= 2;
    for (std::size_t i = 0; i + 1 < sweep.medians.size(); ++i) {
        const QuantileEstimate& hi = sweep.medians[i];      // smaller k, larger tau
        const QuantileEstimate& lo = sweep.medians[i + 1];  // larger k
        if (!(hi.point > lo.point) || !(hi.ci_low > lo.ci_high)) pass = false;
    }
    res.pass = pass;
    std::string d = "medians";
    for (const auto& m : sweep.medians) d += fmt(" %.1f", m.point);
    res.detail = d;
    return res;
}

CriterionResult criterion_generous(const CriterionCtx& ctx) {
    CriterionResult res{10, "generous containment and doubling analogue", false, ""};
    Config cfg;
    cfg.set("n", ctx.cfg.get_string("c10_n", "1e4"));
    cfg.set("k", ctx.cfg.get_string("c10_k", "2e3"));
    cfg.set("t", ctx.cfg.get_string("c10_t", "3.14"));
    cfg.set("replicas", ctx.cfg.get_string("c10_replicas", "200"));
    cfg.set("base_seed", std::to_string(derive_seed(ctx.base, 10)));
    GlobalOpts opts = ctx.opts;
    opts.out_dir = ctx.opts.out_dir + "/c10_generous";
    const int code = cmd_generous(cfg, opts);
    std::ifstream in(opts.out_dir + "/generous_summary.csv");
    std::string header, values;
    std::getline(in, header);
    std::getline(in, values);
    double fraction = 0.0;
    int al_ok = 0;
    std::sscanf(values.c_str(), "%lf,%d", &fraction, &al_ok);
    res.pass = code == kExitOk && fraction >= 0.95 && al_ok == 1;
    res.detail = fmt("containment fraction %.3f (needs >= 0.95), doubling analogue ", fraction) +
                 (al_ok ? "holds" : "fails");
    return res;
}

CriterionResult criterion_nucleation_bounds(const CriterionCtx& ctx) {
    CriterionResult res{11, "nucleation-count bounds", false, ""};
    // Pinned point for the semi-perimeter bound.
    const double n1 = ctx.cfg.get_double("c11_n1", 1e6);
    const double k1 = ctx.cfg.get_double("c11_k1", 1e4);
    const double logn = std::log(n1);
    const double m2 = k1 * logn;                      // m = sqrt(k ln n), squared
    const double L = std::log(k1 / logn);
    const double t1 = n1 / (4.0 * k1) * L;
    const std::int64_t area1 = std::llround(m2 / 4.0);
    const std::int64_t ell1 = static_cast<std::int64_t>(std::ceil(m2 / k1 * L));
    const double tail1 = nucleation_count_tail(area1, t1, n1, ell1);
    const double log_bound1 =
        static_cast<double>(ell1) * std::log(m2 * L / (4.0 * static_cast<double>(ell1) * k1));
    const bool ok1 = std::log(tail1) < log_bound1;

    // Pinned point for the two box scales near the fast-rate end.
    const double n2 = ctx.cfg.get_double("c11_n2", 1e6);
    const double k2 = ctx.cfg.get_double("c11_k2", 9e5);
    const double c = ctx.cfg.get_double("c11_c", 0.1);
    const double L2 = std::log(n2 / k2);
    const double t2 = c * std::cbrt(n2 * n2 / (k2 * L2));
    const double m_small = std::pow(k2 * n2 * L2, 1.0 / 6.0);
    const double m_big = m_small * std::sqrt(L2);
    const std::int64_t hw_big = std::llround(m_big);
    const std::int64_t hw_small = std::llround(m_small);
    const std::int64_t area_big = (2 * hw_big + 1) * (2 * hw_big + 1);
    const std::int64_t area_small = (2 * hw_small + 1) * (2 * hw_small + 1);
    const std::int64_t ell_big = static_cast<std::int64_t>(std::ceil(L2));
    const std::int64_t ell_small = static_cast<std::int64_t>(std::ceil(std::cbrt(L2)));
    const double tail_big = nucleation_count_tail(area_big, t2, n2, ell_big);
    const double tail_small = nucleation_count_tail(area_small, t2, n2, ell_small);
    const double bound_big = std::pow(k2 / n2, 4.0);
    const double bound_small = std::pow(L2, -4.0);
    const bool ok2 = tail_big < bound_big;
    const bool ok3 = tail_small < bound_small;

    res.pass = ok1 && ok2 && ok3;
    res.detail = fmt("log-tails vs log-bounds: %.1f<%.1f", std::log(tail1), log_bound1) +
                 fmt(", %.3g<%.3g", tail_big, bound_big) +
                 fmt(", %.3g<%.3g", tail_small, bound_small);
    return res;
}

CriterionResult criterion_reproducibility(const CriterionCtx& ctx) {
    CriterionResult res{12, "byte-identical CSV bodies on re-run", false, ""};
    auto read = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    Config tau_cfg;
    tau_cfg.set("n", ctx.cfg.get_string("c12_n", "1e4"));
    tau_cfg.set("k", ctx.cfg.get_string("c12_k", "[10, 100]"));
    tau_cfg.set("box_halfwidth", ctx.cfg.get_string("c12_halfwidth", "24"));
    tau_cfg.set("replicas", ctx.cfg.get_string("c12_replicas", "40"));
    tau_cfg.set("base_seed", std::to_string(derive_seed(ctx.base, 12)));
    Config boot_cfg;
    boot_cfg.set("pc_halfwidths", "[8]");
    boot_cfg.set("pc_replicas", "40");
    boot_cfg.set("coarse_ratio", "32");
    boot_cfg.set("coarse_p", "[0.1, 0.3]");
    boot_cfg.set("coarse_replicas", "50");
    boot_cfg.set("base_seed", std::to_string(derive_seed(ctx.base, 13)));
    bool ok = true;
    for (int round = 0; round < 2; ++round) {
        GlobalOpts opts = ctx.opts;
        opts.jobs = round == 0 ? 1 : ctx.opts.jobs;  // thread count must not matter
        opts.out_dir = ctx.opts.out_dir + "/c12_run" + std::to_string(round + 1);
        cmd_tau(tau_cfg, opts);
        cmd_bootstrap(boot_cfg, opts);
    }
    for (const char* f : {"/tau_samples.csv", "/tau_summary.csv", "/bootstrap_samples.csv",
                          "/bootstrap_coarse.csv", "/bootstrap_pc_summary.csv"}) {
        if (read(ctx.opts.out_dir + "/c12_run1" + f) != read(ctx.opts.out_dir + "/c12_run2" + f))
            ok = false;
    }
    res.pass = ok;
    res.detail = ok ? "all CSV bodies identical across runs and thread counts"
                    : "CSV bodies differ between runs";
    return res;
}

}  // namespace

VerifyReport run_verify(const Config& cfg, const GlobalOpts& opts) {
    CriterionCtx ctx{cfg, opts, cfg.get_u64("base_seed", 20260811ull), SimOptions{}};
    if (opts.seed_override) ctx.base = *opts.seed_override;
    if (opts.budget_override) ctx.sim.budget = *opts.budget_override;
    VerifyReport report;
    auto emit = [&](CriterionResult r) {
        std::printf("[%s] C%-2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
        report.criteria.push_back(std::move(r));
    };

    std::vector<RectanglesState> kept;
    emit(criterion_closure_oracle(ctx, &kept));
    emit(criterion_al_doubling(kept));
    emit(criterion_engine_exactness(ctx));
    emit(criterion_poisson_identity(ctx));
    emit(criterion_coupling_dominance(ctx));
    emit(criterion_droplet_band(ctx, 6, "accelerating-regime droplet law", "c6", true));
    emit(criterion_droplet_band(ctx, 7, "terminal-velocity droplet law", "c7", false));

    const double c8_n = cfg.get_double("c8_n", 1e6);
    const std::int64_t c8_hw = cfg.get_int("c8_halfwidth", 320);
    const std::int64_t c8_reps = cfg.get_int("c8_replicas", 200);
    std::vector<double> sweep_ks = cfg.get_double_list("c9_k");
    TauSweepResult sweep = tau_sweep(ctx, c8_n, sweep_ks, c8_hw, c8_reps, 90);
    std::size_t c8_index = 0;
    const double c8_k = cfg.get_double("c8_k", 1e3);
    for (std::size_t i = 0; i < sweep_ks.size(); ++i)
        if (sweep_ks[i] == c8_k) c8_index = i;
    emit(criterion_tau_regime_b(ctx, sweep, c8_index));
    emit(criterion_tau_monotonicity(sweep));
    emit(criterion_generous(ctx));
    emit(criterion_nucleation_bounds(ctx));
    emit(criterion_reproducibility(ctx));

    // Persist the sweep so the verification run leaves an auditable table.
    SampleTable table;
    for (std::size_t a = 0; a < sweep.ks.size(); ++a) {
        table.append(SampleRow{"verify_tau_median_k" + std::to_string(a), ctx.base, c8_n,
                               sweep.ks[a], c8_hw, "DS", "tau_median", 0,
                               sweep.medians[a].point, "ok"});
    }
    write_file(opts.out_dir + "/verify_samples.csv", table.to_csv());
    std::string report_text;
    for (const auto& c : report.criteria)
        report_text += std::string(c.pass ? "[PASS] " : "[FAIL] ") + "C" + std::to_string(c.id) +
                       " " + c.name + ": " + c.detail + "\n";
    write_file(opts.out_dir + "/verify_report.txt", report_text);
    return report;
}

int cmd_verify(const Config& cfg, const GlobalOpts& opts) {
    VerifyReport report = run_verify(cfg, opts);
    return report.all_pass() ? kExitOk : kExitPropertyFailure;
}

}  // namespace nucgrow
