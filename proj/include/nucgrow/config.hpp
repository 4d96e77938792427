#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace nucgrow {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Flat key-value experiment configuration:
//
//   # comment
//   name = tau_regime_b
//   n = 1e6
//   k = [1e2, 1e3, 1e4]     # list syntax for sweep axes
//
// Values are untyped text until retrieval; `set` applies CLI overrides.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

    // A scalar parses as a one-element list.
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<std::int64_t> get_int_list(const std::string& key) const;

    // Canonical "key = value" text in sorted key order.
    std::string canonical_text() const;
    // FNV-1a hash of the canonical text; recorded in run manifests.
    std::uint64_t hash() const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace nucgrow
