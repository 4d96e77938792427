#include "nucgrow/sample.hpp"

#include <cstdio>
#include <stdexcept>

namespace nucgrow {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void SampleTable::append(SampleRow row) {
    rows_.push_back(std::move(row));
}

std::vector<double> SampleTable::values(
    const std::string& observable,
    const std::function<bool(const SampleRow&)>& pred) const {
    std::vector<double> out;
    for (const SampleRow& r : rows_) {
        if (r.observable != observable || !r.value.has_value()) continue;
        if (pred && !pred(r)) continue;
        out.push_back(*r.value);
    }
    return out;
}

const char* SampleTable::csv_header() {
    return "run_id,seed,n,k,box_halfwidth,flavor,observable,m,value,outcome";
}

std::string SampleTable::to_csv() const {
    std::string out = csv_header();
    out += '\n';
    char buf[128];
    for (const SampleRow& r : rows_) {
        out += r.run_id;
        std::snprintf(buf, sizeof(buf), ",%llu,", static_cast<unsigned long long>(r.seed));
        out += buf;
        out += format_double(r.n);
        out += ',';
        out += format_double(r.k);
        std::snprintf(buf, sizeof(buf), ",%lld,", static_cast<long long>(r.box_halfwidth));
        out += buf;
        out += r.flavor;
        out += ',';
        out += r.observable;
        std::snprintf(buf, sizeof(buf), ",%lld,", static_cast<long long>(r.m));
        out += buf;
        if (r.value.has_value()) out += format_double(*r.value);
        out += ',';
        out += r.outcome;
        out += '\n';
    }
    return out;
}

}  // namespace nucgrow
