#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpsi/certified.hpp"

namespace dpsi {

struct SieveOptions {
    // Odd numbers per sieve segment.
    std::size_t segment_size = std::size_t{1} << 20;
    // Segments are sieved by this many threads; the result does not depend
    // on it.
    unsigned workers = 1;
    std::uint64_t memory_budget = std::uint64_t{2} << 30;
};

// Primes up to a limit together with the running Chebyshev sums
// theta(p_k) = log 2 + log 3 + ... + log p_k, each with an error radius.
// Immutable once built.
class PrimeTable {
public:
    // Largest supported limit: primes are stored as 32-bit words.
    static constexpr std::uint64_t kMaxLimit = 0xFFFFFFFFull;

    PrimeTable() = default;

    std::uint64_t limit() const { return limit_; }
    std::size_t size() const { return primes_.size(); }
    std::span<const std::uint32_t> primes() const { return primes_; }

    // p_n, 1-based.
    std::uint64_t nth_prime(std::size_t n) const;

    // Number of primes <= x, for x <= limit.
    std::size_t prime_count(std::uint64_t x) const;

    // theta(x) for 2 <= x <= limit.
    CertifiedValue theta(std::uint64_t x) const;

    // theta(p_n) = log N_n, 1-based.
    CertifiedValue theta_at_index(std::size_t n) const;

    // A table for a smaller limit; bit-identical to building it directly.
    PrimeTable truncated(std::uint64_t new_limit) const;

private:
    friend PrimeTable build_table(std::uint64_t, const SieveOptions&);
    friend class PrimeTableCodec;

    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> primes_;
    std::vector<double> theta_value_;
    std::vector<double> theta_radius_;
};

// Segmented sieve of Eratosthenes plus the compensated theta prefix.
// Throws DomainError for limit < 2 and ResourceError when the limit does
// not fit the memory budget.
PrimeTable build_table(std::uint64_t limit, const SieveOptions& options = {});

// Sieve limit that guarantees at least n primes.
std::uint64_t limit_for_prime_count(std::size_t n);

} // namespace dpsi
