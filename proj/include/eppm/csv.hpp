#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eppm/analysis.hpp"

namespace eppm {

/// One CSV data row.  Bounds-only output leaves the simulation fields unset;
/// unset fields are written as empty cells, never as zeros.
struct ResultRow {
    std::string scheme;
    int q = 0;
    int k = 0;
    int lambda = 0;
    int m = 0;
    double gamma_db = 0.0;
    double eta = 0.0;
    std::optional<double> ser_bound;
    std::optional<double> ber_bound;
    std::optional<long long> trials;
    std::optional<long long> symbol_errors;
    std::optional<long long> bit_errors;
    std::optional<double> ser_sim;
    std::optional<double> ber_sim;
    std::optional<double> ci95;
};

inline constexpr const char* results_schema_version = "# eppm.results.v1";
inline constexpr const char* results_header =
    "scheme,q,k,lambda,m,gamma_db,eta,ser_bound,ber_bound,"
    "trials,symbol_errors,bit_errors,ser_sim,ber_sim,ci95";

inline constexpr const char* frontier_schema_version = "# eppm.frontier.v1";
inline constexpr const char* frontier_header = "scheme,q,eta,required_gamma_db";

/// Shortest-round-trip style float formatting ("%.12g").
std::string format_double(double v);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_frontier_csv(std::ostream& out, const std::vector<FrontierPoint>& points);

} // namespace eppm
