#include "dpsi/arith.hpp"

#include <string>

namespace dpsi {

Factorization factorize(const PrimeTable& table, std::uint64_t n, std::uint64_t limit)
{
    if (n == 0)
        throw DomainError("factorize: n must be positive");
    const unsigned __int128 reach = static_cast<unsigned __int128>(table.limit()) * table.limit();
    if (n > limit || n > reach)
        throw CapabilityError("factorize: " + std::to_string(n) +
                              " is beyond the factorization limit; raise the sieve bound "
                              "(currently " + std::to_string(table.limit()) + ")");
    Factorization f;
    f.n = n;
    std::uint64_t m = n;
    for (std::uint32_t p : table.primes()) {
        if (std::uint64_t{p} * p > m)
            break;
        if (m % p)
            continue;
        unsigned e = 0;
        do {
            m /= p;
            ++e;
        } while (m % p == 0);
        f.factors.push_back({p, e});
    }
    if (m > 1)
        f.factors.push_back({m, 1});
    return f;
}

Factorization primorial_factorization(const PrimeTable& table, std::size_t n)
{
    if (n > 15)
        throw CapabilityError("primorial_factorization: N_" + std::to_string(n) +
                              " does not fit in 64 bits");
    Factorization f;
    for (std::size_t k = 1; k <= n; ++k) {
        const std::uint64_t p = table.nth_prime(k);
        f.n *= p;
        f.factors.push_back({p, 1});
    }
    return f;
}

BigInt primorial(const PrimeTable& table, std::size_t n)
{
    BigInt r = 1;
    for (std::size_t k = 1; k <= n; ++k)
        r *= table.nth_prime(k);
    return r;
}

BigInt psi(const Factorization& f)
{
    BigInt r = 1;
    for (const auto& [p, e] : f.factors) {
        r *= p + 1;
        for (unsigned i = 1; i < e; ++i)
            r *= p;
    }
    return r;
}

BigInt phi(const Factorization& f)
{
    BigInt r = 1;
    for (const auto& [p, e] : f.factors) {
        r *= p - 1;
        for (unsigned i = 1; i < e; ++i)
            r *= p;
    }
    return r;
}

BigInt sigma(const Factorization& f)
{
    BigInt r = 1;
    for (const auto& [p, e] : f.factors) {
        BigInt term = 1, pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            term += pk;
        }
        r *= term;
    }
    return r;
}

std::uint64_t radical(const Factorization& f)
{
    std::uint64_t r = 1;
    for (const auto& pe : f.factors)
        r *= pe.prime;
    return r;
}

bool is_squarefree(const Factorization& f)
{
    for (const auto& pe : f.factors)
        if (pe.exponent > 1)
            return false;
    return true;
}

PsiRatio psi_ratio(const Factorization& f)
{
    PsiRatio r{1, 1};
    for (const auto& pe : f.factors) {
        r.num *= pe.prime + 1;
        r.den *= pe.prime;
    }
    return r;
}

int compare_psi_ratio(const PsiRatio& a, const PsiRatio& b)
{
    const BigInt lhs = a.num * b.den;
    const BigInt rhs = b.num * a.den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

CertifiedValue to_certified(const BigInt& n)
{
    using boost::multiprecision::abs;
    const double v = n.convert_to<double>();
    if (!std::isfinite(v))
        throw DomainError("to_certified: integer out of double range");
    const BigInt back(v);
    const BigInt diff = abs(n - back);
    double r = diff.convert_to<double>();
    if (BigInt(r) < diff)
        r = step_up(r);
    return CertifiedValue{v, r};
}

CertifiedValue to_certified(const BigInt& num, const BigInt& den)
{
    return cv_div(to_certified(num), to_certified(den));
}

CertifiedValue ratio_R(const Factorization& f)
{
    if (f.n < 3)
        throw DomainError("ratio_R: R undefined below 3 (n = " + std::to_string(f.n) + ")");
    const PsiRatio q = psi_ratio(f);
    const CertifiedValue log_log_n = cv_log(cv_log(from_uint<double>(f.n)));
    return cv_div(to_certified(q.num, q.den), log_log_n);
}

CertifiedValue ratio_R(const PrimeTable& table, std::uint64_t n)
{
    if (n < 3)
        throw DomainError("ratio_R: R undefined below 3 (n = " + std::to_string(n) + ")");
    return ratio_R(factorize(table, n));
}

} // namespace dpsi
