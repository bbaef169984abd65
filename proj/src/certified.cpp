#include "dpsi/certified.hpp"

#include <charconv>

#include "dpsi/extended.hpp"

namespace dpsi {

const char* status_name(Status s)
{
    switch (s) {
    case Status::Holds: return "HOLDS";
    case Status::Fails: return "FAILS";
    case Status::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

const char* claim_symbol(Claim c)
{
    switch (c) {
    case Claim::Less: return "<";
    case Claim::LessEqual: return "<=";
    case Claim::Greater: return ">";
    case Claim::GreaterEqual: return ">=";
    }
    return "?";
}

std::string to_string(const CertifiedValue& v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v.value);
    std::string out(buf, res.ptr);
    out += " +/- ";
    res = std::to_chars(buf, buf + sizeof buf, v.radius);
    out.append(buf, res.ptr);
    return out;
}

CertifiedValue narrow(const ExtendedValue& x)
{
    using boost::multiprecision::abs;
    const double v = x.value.convert_to<double>();
    // Distance from the rounded centre, plus the extended radius, both
    // rounded up before and after the conversion.
    Quad gap = abs(x.value - Quad(v));
    Quad total = add_up(gap, x.radius);
    double r = total.convert_to<double>();
    if (Quad(r) < total)
        r = step_up(r);
    return CertifiedValue{v, r};
}

Verdict narrow(const BasicVerdict<Quad>& v)
{
    return Verdict{v.status, narrow(v.margin)};
}

} // namespace dpsi
