#include "eppm/csv.hpp"

#include <cstdio>
#include <ostream>

namespace eppm {

namespace {

void put(std::ostream& out, const std::optional<double>& v) {
    if (v) out << format_double(*v);
}

void put(std::ostream& out, const std::optional<long long>& v) {
    if (v) out << *v;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << results_schema_version << '\n' << results_header << '\n';
    for (const auto& r : rows) {
        out << r.scheme << ',' << r.q << ',' << r.k << ',' << r.lambda << ',' << r.m << ','
            << format_double(r.gamma_db) << ',' << format_double(r.eta) << ',';
        put(out, r.ser_bound);
        out << ',';
        put(out, r.ber_bound);
        out << ',';
        put(out, r.trials);
        out << ',';
        put(out, r.symbol_errors);
        out << ',';
        put(out, r.bit_errors);
        out << ',';
        put(out, r.ser_sim);
        out << ',';
        put(out, r.ber_sim);
        out << ',';
        put(out, r.ci95);
        out << '\n';
    }
}

void write_frontier_csv(std::ostream& out, const std::vector<FrontierPoint>& points) {
    out << frontier_schema_version << '\n' << frontier_header << '\n';
    for (const auto& p : points)
        out << scheme_name(p.scheme) << ',' << p.q << ',' << format_double(p.eta) << ','
            << format_double(p.required_gamma_db) << '\n';
}

} // namespace eppm
