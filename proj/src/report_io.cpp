#include "dpsi/report_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>

namespace dpsi {

SeriesRow to_row(const PrimorialPoint& pt)
{
    SeriesRow r;
    r.n = pt.n;
    r.p_n = pt.p_n;
    r.theta = pt.log_Nn.value;
    r.log_theta = pt.log_log_Nn.value;
    r.R_value = pt.R.value;
    r.R_radius = pt.R.radius;
    r.g_value = pt.g.value;
    r.g_radius = pt.g.radius;
    r.margin_lower = pt.margin_lower.value;
    r.verdict =
        compare(pt.R, Constants<double>::get().e_gamma_over_zeta2, Claim::Greater).status;
    return r;
}

std::string format_double(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_series_header(std::ostream& out)
{
    out << kSeriesHeader << '\n';
}

void write_series_row(std::ostream& out, const SeriesRow& row)
{
    out << row.n << ',' << row.p_n << ',' << format_double(row.theta) << ','
        << format_double(row.log_theta) << ',' << format_double(row.R_value) << ','
        << format_double(row.R_radius) << ',' << format_double(row.g_value) << ','
        << format_double(row.g_radius) << ',' << format_double(row.margin_lower) << ','
        << status_name(row.verdict) << '\n';
}

Status parse_status(std::string_view s)
{
    if (s == "HOLDS")
        return Status::Holds;
    if (s == "FAILS")
        return Status::Fails;
    if (s == "INCONCLUSIVE")
        return Status::Inconclusive;
    throw FormatError("unknown verdict '" + std::string(s) + "'");
}

namespace {

template <class T>
T parse_field(std::string_view field, std::size_t line)
{
    T v{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw FormatError("series csv line " + std::to_string(line) + ": bad field '" +
                          std::string(field) + "'");
    return v;
}

} // namespace

std::vector<SeriesRow> parse_series_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kSeriesHeader)
        throw FormatError("series csv: missing or unexpected header");
    std::vector<SeriesRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string_view> f;
        std::string_view rest(line);
        for (;;) {
            const auto comma = rest.find(',');
            f.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (f.size() != 10)
            throw FormatError("series csv line " + std::to_string(lineno) + ": expected 10 fields");
        SeriesRow r;
        r.n = parse_field<std::size_t>(f[0], lineno);
        r.p_n = parse_field<std::uint64_t>(f[1], lineno);
        r.theta = parse_field<double>(f[2], lineno);
        r.log_theta = parse_field<double>(f[3], lineno);
        r.R_value = parse_field<double>(f[4], lineno);
        r.R_radius = parse_field<double>(f[5], lineno);
        r.g_value = parse_field<double>(f[6], lineno);
        r.g_radius = parse_field<double>(f[7], lineno);
        r.margin_lower = parse_field<double>(f[8], lineno);
        r.verdict = parse_status(f[9]);
        rows.push_back(r);
    }
    return rows;
}

Json to_json(const ScanReport& r)
{
    Json j;
    j["bound"] = r.bound;
    j["range"] = Json::array({r.from, r.to});
    j["stride"] = r.stride;
    j["points_checked"] = r.points_checked;
    j["worst_margin"] = r.worst_margin.value;
    j["worst_margin_radius"] = r.worst_margin.radius;
    j["worst_at"] = r.worst_at;
    j["verdicts"] = Json{{"holds", r.holds}, {"inconclusive", r.inconclusive}, {"fails", r.fails}};
    j["escalations"] = r.escalations;
    j["holds_from"] = r.holds_from ? Json(*r.holds_from) : Json(nullptr);
    return j;
}

Json to_json(const PrimorialPoint& pt)
{
    Json j;
    j["n"] = pt.n;
    j["p_n"] = pt.p_n;
    j["theta"] = to_json(pt.log_Nn);
    j["log_theta"] = to_json(pt.log_log_Nn);
    j["psi_over_n"] = to_json(pt.psi_over_n);
    j["R"] = to_json(pt.R);
    j["g"] = to_json(pt.g);
    j["f"] = to_json(pt.f);
    j["margin_lower"] = to_json(pt.margin_lower);
    j["margin_upper"] = to_json(pt.margin_upper);
    return j;
}

} // namespace dpsi
