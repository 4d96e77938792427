#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nucgrow {

// One measurement row. `value` is absent for censored runs, in which case
// `outcome` says why (e.g. "budget").
struct SampleRow {
    std::string run_id;
    std::uint64_t seed = 0;
    double n = 0.0;
    double k = 0.0;
    std::int64_t box_halfwidth = 0;
    std::string flavor;
    std::string observable;
    std::int64_t m = 0;
    std::optional<double> value;
    std::string outcome = "ok";
};

// Deterministic float formatting used for every CSV field (round-trip
// exact, locale independent).
std::string format_double(double v);

class SampleTable {
public:
    void append(SampleRow row);
    const std::vector<SampleRow>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    // Values of uncensored rows matching the observable and predicate.
    std::vector<double> values(const std::string& observable,
                               const std::function<bool(const SampleRow&)>& pred = nullptr) const;

    std::string to_csv() const;

    static const char* csv_header();

private:
    std::vector<SampleRow> rows_;
};

}  // namespace nucgrow
