#pragma once

// Ball arithmetic: a floating-point centre plus a rigorous absolute error
// radius. Every real quantity that feeds an inequality verdict is carried
// as a Ball so that HOLDS / FAILS are only reported when the enclosures of
// the two sides are disjoint.
//
// Rounding model. The hardware runs in round-to-nearest. Radii are kept
// upper bounds by pushing every rounded radius computation one step
// outward (step_up), unless an error-free transformation shows the
// operation was exact. Basic arithmetic errors are obtained exactly from
// TwoSum / FMA residuals. For log, log1p and exp the platform library is
// assumed faithful to within 1 ulp; the radius charges
// FloatTraits<T>::transcendental_ulps ulp of the result (2 for double).

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>

#include "dpsi/errors.hpp"

namespace dpsi {

template <class T>
struct FloatTraits;

template <>
struct FloatTraits<double> {
    static constexpr int transcendental_ulps = 2;

    static double tiny() { return std::numeric_limits<double>::denorm_min(); }
    static double log(double x) { return std::log(x); }
    static double log1p(double x) { return std::log1p(x); }
    static double exp(double x) { return std::exp(x); }
    static double parse(const char* s) { return std::strtod(s, nullptr); }

    // |a*b - p| where p = fl(a*b). The FMA residual is exact unless the
    // product is close to the underflow threshold.
    static double product_error(double a, double b, double p)
    {
        if (std::abs(p) >= 0x1p-960)
            return std::abs(std::fma(a, b, -p));
        return std::abs(p) * 0x1p-52 + tiny();
    }

    // |a/b - q| where q = fl(a/b); the residual a - q*b is exact.
    static double quotient_error(double a, double b, double q)
    {
        if (std::abs(a) >= 0x1p-900 && std::abs(q) >= 0x1p-960) {
            const double rem = std::abs(std::fma(-q, b, a));
            if (rem == 0.0)
                return 0.0;
            const double e = rem / std::abs(b);
            return e + std::abs(e) * 0x1p-52 + tiny();
        }
        return std::abs(q) * 0x1p-52 + tiny();
    }
};

// Gap between |x| and the next representable number above it.
template <class T>
T ulp(const T& x)
{
    using std::abs;
    using std::frexp;
    using std::ldexp;
    if (x == 0)
        return FloatTraits<T>::tiny();
    int e = 0;
    frexp(abs(x), &e);
    T u = ldexp(T(1), e - std::numeric_limits<T>::digits);
    return u > FloatTraits<T>::tiny() ? u : FloatTraits<T>::tiny();
}

// Smallest representable value >= every real that rounds to x.
template <class T>
T step_up(const T& x)
{
    return x + ulp(x);
}

template <class T>
T step_down(const T& x)
{
    return x - ulp(x);
}

template <class T>
std::pair<T, T> two_sum(const T& a, const T& b)
{
    T s = a + b;
    T bb = s - a;
    T err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// Upper bound on x + y.
template <class T>
T add_up(const T& x, const T& y)
{
    auto [s, e] = two_sum(x, y);
    return e > 0 ? step_up(s) : s;
}

// Lower bound on x - y.
template <class T>
T sub_down(const T& x, const T& y)
{
    auto [s, e] = two_sum(x, T(-y));
    return e < 0 ? step_down(s) : s;
}

// Upper bound on x * y for x, y >= 0.
template <class T>
T mul_up(const T& x, const T& y)
{
    if (x == 0 || y == 0)
        return T(0);
    T p = x * y;
    return FloatTraits<T>::product_error(x, y, p) == 0 ? p : step_up(p);
}

// Upper bound on x / y for x >= 0, y > 0.
template <class T>
T div_up(const T& x, const T& y)
{
    if (x == 0)
        return T(0);
    T q = x / y;
    return FloatTraits<T>::quotient_error(x, y, q) == 0 ? q : step_up(q);
}

// Lower bound on x / y for x >= 0, y > 0.
template <class T>
T div_down(const T& x, const T& y)
{
    if (x == 0)
        return T(0);
    T q = x / y;
    return FloatTraits<T>::quotient_error(x, y, q) == 0 ? q : step_down(q);
}

template <class T>
struct Ball {
    T value{};
    T radius{};

    static Ball exact(const T& v) { return Ball{v, T(0)}; }

    // Outward-rounded endpoints of the enclosure.
    T lower() const { return radius == 0 ? value : sub_down(value, radius); }
    T upper() const
    {
        if (radius == 0)
            return value;
        auto [s, e] = two_sum(value, radius);
        return e > 0 ? step_up(s) : s;
    }

    bool contains_zero() const { return lower() <= 0 && upper() >= 0; }
};

using CertifiedValue = Ball<double>;

namespace detail {

template <class T>
Ball<T> checked(Ball<T> b, const char* op)
{
    using std::isfinite;
    if (!isfinite(b.value) || !isfinite(b.radius))
        throw DomainError(std::string(op) + ": result is not finite");
    return b;
}

template <class T>
T transcendental_error(const T& v)
{
    T u = ulp(v);
    T err = u;
    for (int i = 1; i < FloatTraits<T>::transcendental_ulps; ++i)
        err += u;
    return err;
}

} // namespace detail

template <class T>
Ball<T> cv_neg(const Ball<T>& a)
{
    return Ball<T>{T(-a.value), a.radius};
}

template <class T>
Ball<T> cv_add(const Ball<T>& a, const Ball<T>& b)
{
    using std::abs;
    auto [s, e] = two_sum(a.value, b.value);
    T r = add_up(add_up(a.radius, b.radius), T(abs(e)));
    return detail::checked(Ball<T>{s, r}, "cv_add");
}

template <class T>
Ball<T> cv_sub(const Ball<T>& a, const Ball<T>& b)
{
    return cv_add(a, cv_neg(b));
}

template <class T>
Ball<T> cv_mul(const Ball<T>& a, const Ball<T>& b)
{
    using std::abs;
    T p = a.value * b.value;
    T r = FloatTraits<T>::product_error(a.value, b.value, p);
    r = add_up(r, mul_up(a.radius, T(abs(b.value))));
    r = add_up(r, mul_up(T(abs(a.value)), b.radius));
    r = add_up(r, mul_up(a.radius, b.radius));
    return detail::checked(Ball<T>{p, r}, "cv_mul");
}

template <class T>
Ball<T> cv_div(const Ball<T>& a, const Ball<T>& b)
{
    using std::abs;
    if (b.contains_zero())
        throw DomainError("cv_div: divisor interval contains zero");
    T q = a.value / b.value;
    T qerr = FloatTraits<T>::quotient_error(a.value, b.value, q);
    // |x/y - a/b| <= (ra + |a/b| rb) / (|b| - rb) over the input balls.
    T r = qerr;
    if (a.radius != 0 || b.radius != 0) {
        T num = add_up(a.radius, mul_up(add_up(T(abs(q)), qerr), b.radius));
        T den = sub_down(T(abs(b.value)), b.radius);
        r = add_up(r, div_up(num, den));
    }
    return detail::checked(Ball<T>{q, r}, "cv_div");
}

template <class T>
Ball<T> cv_log(const Ball<T>& a)
{
    T lo = a.lower();
    if (!(lo > 0))
        throw DomainError("cv_log: argument interval is not strictly positive");
    T v = FloatTraits<T>::log(a.value);
    T r = detail::transcendental_error(v);
    if (a.radius != 0)
        r = add_up(r, div_up(a.radius, lo));
    return detail::checked(Ball<T>{v, r}, "cv_log");
}

// log(1 + a), accurate for small a.
template <class T>
Ball<T> cv_log1p(const Ball<T>& a)
{
    T lo = a.lower();
    T one_plus_lo = sub_down(T(1), T(-lo));
    if (!(one_plus_lo > 0))
        throw DomainError("cv_log1p: argument interval reaches -1");
    T v = FloatTraits<T>::log1p(a.value);
    T r = detail::transcendental_error(v);
    if (a.radius != 0)
        r = add_up(r, div_up(a.radius, one_plus_lo));
    return detail::checked(Ball<T>{v, r}, "cv_log1p");
}

template <class T>
Ball<T> cv_exp(const Ball<T>& a)
{
    T v = FloatTraits<T>::exp(a.value);
    T r = detail::transcendental_error(v);
    if (a.radius != 0) {
        // Mean value bound: exp is bounded by exp(upper) on the ball.
        T e_hi = FloatTraits<T>::exp(a.upper());
        e_hi = add_up(e_hi, detail::transcendental_error(e_hi));
        r = add_up(r, mul_up(e_hi, a.radius));
    }
    return detail::checked(Ball<T>{v, r}, "cv_exp");
}

template <class T>
Ball<T> operator+(const Ball<T>& a, const Ball<T>& b) { return cv_add(a, b); }
template <class T>
Ball<T> operator-(const Ball<T>& a, const Ball<T>& b) { return cv_sub(a, b); }
template <class T>
Ball<T> operator-(const Ball<T>& a) { return cv_neg(a); }
template <class T>
Ball<T> operator*(const Ball<T>& a, const Ball<T>& b) { return cv_mul(a, b); }
template <class T>
Ball<T> operator/(const Ball<T>& a, const Ball<T>& b) { return cv_div(a, b); }

// True when the two enclosures share at least one point.
template <class T>
bool overlaps(const Ball<T>& a, const Ball<T>& b)
{
    return a.lower() <= b.upper() && b.lower() <= a.upper();
}

// Exact conversion when possible; otherwise the conversion error becomes
// the radius.
template <class T>
Ball<T> from_uint(std::uint64_t n)
{
    T v = static_cast<T>(n);
    if constexpr (std::numeric_limits<T>::digits >= 64) {
        return Ball<T>::exact(v);
    } else {
        if (n < (std::uint64_t{1} << std::numeric_limits<T>::digits))
            return Ball<T>::exact(v);
        const auto back = static_cast<unsigned __int128>(v);
        const auto diff = back > n ? back - n : n - back;
        return Ball<T>{v, static_cast<T>(static_cast<std::uint64_t>(diff))};
    }
}

// ---------------------------------------------------------------------------
// Verdicts

enum class Status { Holds, Fails, Inconclusive };

// Orientation of a claimed inequality "lhs <op> rhs".
enum class Claim { Less, LessEqual, Greater, GreaterEqual };

const char* status_name(Status s);
const char* claim_symbol(Claim c);

template <class T>
struct BasicVerdict {
    Status status = Status::Inconclusive;
    // Oriented so that a positive margin means the claim is satisfied.
    Ball<T> margin;
};

using Verdict = BasicVerdict<double>;

template <class T>
BasicVerdict<T> compare(const Ball<T>& lhs, const Ball<T>& rhs, Claim claim)
{
    const bool less = claim == Claim::Less || claim == Claim::LessEqual;
    const bool strict = claim == Claim::Less || claim == Claim::Greater;
    Ball<T> margin = less ? cv_sub(rhs, lhs) : cv_sub(lhs, rhs);
    const T lo = margin.lower();
    const T hi = margin.upper();
    Status s = Status::Inconclusive;
    if (strict) {
        if (lo > 0)
            s = Status::Holds;
        else if (hi <= 0)
            s = Status::Fails;
    } else {
        if (lo >= 0)
            s = Status::Holds;
        else if (hi < 0)
            s = Status::Fails;
    }
    return BasicVerdict<T>{s, margin};
}

// ---------------------------------------------------------------------------
// Constants, from 47-digit decimal literals with a 1 ulp radius.

template <class T>
struct Constants {
    Ball<T> euler_gamma;
    Ball<T> e_gamma;
    Ball<T> zeta2;
    Ball<T> e_gamma_over_zeta2;

    static const Constants& get()
    {
        static const Constants c{
            literal("0.57721566490153286060651209008240243104215933594"),
            literal("1.7810724179901979852365041031071795491696452143"),
            literal("1.6449340668482264364724151666460251892189499012"),
            literal("1.0827621932609245801221880381909265701843066556"),
        };
        return c;
    }

private:
    static Ball<T> literal(const char* s)
    {
        T v = FloatTraits<T>::parse(s);
        return Ball<T>{v, ulp(v)};
    }
};

// Compensated (double-word) accumulator of Balls. The running sum is held
// as hi + lo with every TwoSum residual recovered exactly; the only
// rounding left is in lo, whose errors are tracked in err_.
template <class T>
class CompensatedSum {
public:
    void add(const Ball<T>& x)
    {
        using std::abs;
        auto [s, e] = two_sum(hi_, x.value);
        hi_ = s;
        auto [l, le] = two_sum(lo_, e);
        lo_ = l;
        if (le != 0)
            err_ = add_up(err_, T(abs(le)));
        radius_ = add_up(radius_, x.radius);
    }

    Ball<T> result() const
    {
        using std::abs;
        auto [v, e] = two_sum(hi_, lo_);
        T r = add_up(radius_, err_);
        if (e != 0)
            r = add_up(r, T(abs(e)));
        return Ball<T>{v, r};
    }

private:
    T hi_{};
    T lo_{};
    T err_{};
    T radius_{};
};

std::string to_string(const CertifiedValue& v);

} // namespace dpsi
