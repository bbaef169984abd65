#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dpsi/certified.hpp"
#include "dpsi/prime_table.hpp"

namespace dpsi {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultFactorizationLimit = 1'000'000'000'000ull;

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors; // primes strictly increasing
};

// Trial division by the sieved primes. Works for n <= min(limit,
// table.limit()^2); anything above raises CapabilityError.
Factorization factorize(const PrimeTable& table, std::uint64_t n,
                        std::uint64_t limit = kDefaultFactorizationLimit);

// The first n primes as a factorization of N_n. N_n must fit in 64 bits
// (n <= 15).
Factorization primorial_factorization(const PrimeTable& table, std::size_t n);
BigInt primorial(const PrimeTable& table, std::size_t n);

BigInt psi(const Factorization& f);
BigInt phi(const Factorization& f);
BigInt sigma(const Factorization& f);
// Product of the distinct primes.
std::uint64_t radical(const Factorization& f);
bool is_squarefree(const Factorization& f);

// Psi(n)/n as prod (p+1) / prod p over distinct p | n (not reduced).
struct PsiRatio {
    BigInt num;
    BigInt den;
};
PsiRatio psi_ratio(const Factorization& f);

// Strict comparison of Psi(a)/a against Psi(b)/b, exactly.
int compare_psi_ratio(const PsiRatio& a, const PsiRatio& b);

CertifiedValue to_certified(const BigInt& n);
CertifiedValue to_certified(const BigInt& num, const BigInt& den);

// R(n) = Psi(n) / (n log log n). DomainError below 3.
CertifiedValue ratio_R(const Factorization& f);
CertifiedValue ratio_R(const PrimeTable& table, std::uint64_t n);

} // namespace dpsi
