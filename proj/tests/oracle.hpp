#pragma once

// Independent reference implementations used only by the tests: trial
// division, brute-force divisor sums and 100-digit binary floating point.

#include <cstdint>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "dpsi/certified.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_100;
using Int = boost::multiprecision::cpp_int;

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit; ++n)
        if (is_prime(n))
            out.push_back(n);
    return out;
}

inline std::vector<std::uint64_t> first_primes(std::size_t count)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; out.size() < count; ++n)
        if (is_prime(n))
            out.push_back(n);
    return out;
}

inline std::vector<std::uint64_t> distinct_prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

// Divisor-sum definitions, no multiplicativity.
inline Int sigma(std::uint64_t n)
{
    Int s = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            s += d;
            if (d != n / d)
                s += n / d;
        }
    }
    return s;
}

inline bool squarefree(std::uint64_t n)
{
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0)
            return false;
    return true;
}

// Psi(n) = sum of n/d over squarefree divisors d of n.
inline Int psi(std::uint64_t n)
{
    Int s = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        if (squarefree(d))
            s += n / d;
        if (d != n / d && squarefree(n / d))
            s += d;
    }
    return s;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

inline Int phi(std::uint64_t n)
{
    Int c = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (gcd(k, n) == 1)
            ++c;
    return c;
}

inline Big e_gamma()
{
    return exp(boost::math::constants::euler<Big>());
}

inline Big zeta2()
{
    return boost::math::constants::zeta_two<Big>();
}

inline Big c_lower()
{
    return e_gamma() / zeta2();
}

// Exact containment: every double converts exactly at 100 digits.
inline bool contains(const dpsi::CertifiedValue& v, const Big& exact)
{
    return Big(v.lower()) <= exact && exact <= Big(v.upper());
}

inline Big log_of(const Int& n)
{
    return log(Big(n));
}

// R(n) = Psi(n) / (n log log n) at 100 digits.
inline Big ratio_R(std::uint64_t n)
{
    return Big(psi(n)) / (Big(n) * log(log(Big(n))));
}

} // namespace oracle
