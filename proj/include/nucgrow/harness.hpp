#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nucgrow/config.hpp"
#include "nucgrow/sample.hpp"

namespace nucgrow {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitBudget = 3;

struct GlobalOpts {
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed_override;
    std::optional<std::uint64_t> budget_override;
    int jobs = 1;
    bool trace = false;
};

// Canned experiments. Each writes its sample CSV (byte-deterministic for a
// fixed config) plus a JSON manifest into the output directory and returns
// a process exit code.
int cmd_tau(const Config& cfg, const GlobalOpts& opts);
int cmd_droplet(const Config& cfg, const GlobalOpts& opts);
int cmd_bootstrap(const Config& cfg, const GlobalOpts& opts);
int cmd_couple(const Config& cfg, const GlobalOpts& opts);
int cmd_generous(const Config& cfg, const GlobalOpts& opts);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;
    bool all_pass() const {
        for (const auto& c : criteria)
            if (!c.pass) return false;
        return true;
    }
};

// Full verification suite at the pinned desk-scale parameters; prints one
// pass/fail line per criterion and returns the report.
VerifyReport run_verify(const Config& cfg, const GlobalOpts& opts);
int cmd_verify(const Config& cfg, const GlobalOpts& opts);

// Deterministic fan-out helper: runs fn(i) for i in [0, count) on `jobs`
// workers; results must be written into caller-owned slots indexed by i.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

// Writes text to path, creating the directory if needed.
void write_file(const std::string& path, const std::string& text);

std::string code_version();

}  // namespace nucgrow
