#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nucgrow/harness.hpp"
#include "nucgrow/kinetics.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::uint64_t budget = 0;
    bool budget_given = false;
    int jobs = 1;
    bool trace = false;
};

void attach_common(CLI::App* app, CommonArgs& args, const std::string& default_cfg) {
    args.config_path = default_cfg;
    app->add_option("--config", args.config_path, "configuration file");
    app->add_option("--set", args.sets, "override: key=value")->take_all();
    app->add_option("--out", args.out_dir, "output directory");
    app->add_option("--seed", args.seed, "base seed override")
        ->each([&](const std::string&) { args.seed_given = true; });
    app->add_option("--budget", args.budget, "event budget override")
        ->each([&](const std::string&) { args.budget_given = true; });
    app->add_option("--jobs", args.jobs, "worker threads");
    app->add_flag("--trace", args.trace, "write JSONL event traces");
}

nucgrow::Config load_config(const CommonArgs& args) {
    nucgrow::Config cfg = nucgrow::Config::parse_file(args.config_path);
    for (const std::string& kv : args.sets) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw nucgrow::ConfigError("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

nucgrow::GlobalOpts make_opts(const CommonArgs& args) {
    nucgrow::GlobalOpts opts;
    opts.out_dir = args.out_dir;
    opts.jobs = args.jobs;
    opts.trace = args.trace;
    if (args.seed_given) opts.seed_override = args.seed;
    if (args.budget_given) opts.budget_override = args.budget;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nucgrow: event-driven nucleation-and-growth simulator and verifier"};
    app.require_subcommand(1);

    CommonArgs tau_args, droplet_args, bootstrap_args, couple_args, generous_args, verify_args;
    auto* tau = app.add_subcommand("tau", "relaxation-time sweep vs regime predictions");
    attach_common(tau, tau_args, "configs/tau.cfg");
    auto* droplet = app.add_subcommand("droplet", "droplet growth-time curves");
    attach_common(droplet, droplet_args, "configs/droplet.cfg");
    auto* bootstrap = app.add_subcommand("bootstrap", "critical-density and coarse-grid runs");
    attach_common(bootstrap, bootstrap_args, "configs/bootstrap.cfg");
    auto* couple = app.add_subcommand("couple", "coupling dominance tests");
    attach_common(couple, couple_args, "configs/couple.cfg");
    auto* generous = app.add_subcommand("generous", "generous rectangles containment runs");
    attach_common(generous, generous_args, "configs/generous.cfg");
    auto* verify = app.add_subcommand("verify", "full verification suite");
    attach_common(verify, verify_args, "configs/verify.cfg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : nucgrow::kExitConfigError;
    }

    try {
        if (tau->parsed()) return nucgrow::cmd_tau(load_config(tau_args), make_opts(tau_args));
        if (droplet->parsed())
            return nucgrow::cmd_droplet(load_config(droplet_args), make_opts(droplet_args));
        if (bootstrap->parsed())
            return nucgrow::cmd_bootstrap(load_config(bootstrap_args), make_opts(bootstrap_args));
        if (couple->parsed())
            return nucgrow::cmd_couple(load_config(couple_args), make_opts(couple_args));
        if (generous->parsed())
            return nucgrow::cmd_generous(load_config(generous_args), make_opts(generous_args));
        if (verify->parsed())
            return nucgrow::cmd_verify(load_config(verify_args), make_opts(verify_args));
    } catch (const nucgrow::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return nucgrow::kExitConfigError;
    } catch (const nucgrow::BudgetError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return nucgrow::kExitBudget;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return nucgrow::kExitConfigError;
    }
    return nucgrow::kExitConfigError;
}
