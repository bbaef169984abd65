#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dpsi/bounds.hpp"
#include "dpsi/primorial.hpp"
#include "dpsi/verifier.hpp"

namespace dpsi {

// One row of the primorial series CSV.
struct SeriesRow {
    std::size_t n = 0;
    std::uint64_t p_n = 0;
    double theta = 0;
    double log_theta = 0;
    double R_value = 0;
    double R_radius = 0;
    double g_value = 0;
    double g_radius = 0;
    double margin_lower = 0;
    Status verdict = Status::Inconclusive;

    friend bool operator==(const SeriesRow&, const SeriesRow&) = default;
};

inline constexpr std::string_view kSeriesHeader =
    "n,p_n,theta,log_theta,R_value,R_radius,g_value,g_radius,margin_lower,verdict";

// verdict is R(N_n) > e^gamma/zeta(2).
SeriesRow to_row(const PrimorialPoint& pt);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

void write_series_header(std::ostream& out);
void write_series_row(std::ostream& out, const SeriesRow& row);
// Throws FormatError on a malformed line or header.
std::vector<SeriesRow> parse_series_csv(std::istream& in);

Status parse_status(std::string_view s);

Json to_json(const ScanReport& r);
Json to_json(const PrimorialPoint& pt);

} // namespace dpsi
