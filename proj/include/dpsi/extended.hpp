#pragma once

// 113-bit binary floating point for the escalation path. Used only when a
// double-precision verdict comes back INCONCLUSIVE.

#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dpsi/certified.hpp"

namespace dpsi {

using Quad = boost::multiprecision::cpp_bin_float_quad;

template <>
struct FloatTraits<Quad> {
    using Wide = boost::multiprecision::cpp_bin_float_50;

    // The multiprecision elementary functions can be off by several ulp at
    // their own precision, so they run at 50 digits (166 bits) and are
    // rounded once to 113 bits; 2 ulp covers that rounding with room to
    // spare. Stress-tested against a 100-digit oracle in the tests.
    static constexpr int transcendental_ulps = 2;

    static Quad tiny() { return std::numeric_limits<Quad>::min(); }
    static Quad log(const Quad& x) { return Quad(boost::multiprecision::log(Wide(x))); }
    static Quad log1p(const Quad& x) { return Quad(boost::math::log1p(Wide(x))); }
    static Quad exp(const Quad& x) { return Quad(boost::multiprecision::exp(Wide(x))); }
    static Quad parse(const char* s) { return Quad(s); }

    static Quad product_error(const Quad&, const Quad&, const Quad& p) { return ulp(p); }
    static Quad quotient_error(const Quad&, const Quad&, const Quad& q) { return ulp(q); }
};

using ExtendedValue = Ball<Quad>;

// Round an extended ball to a double-centred ball that still encloses it.
CertifiedValue narrow(const ExtendedValue& x);
Verdict narrow(const BasicVerdict<Quad>& v);

} // namespace dpsi
