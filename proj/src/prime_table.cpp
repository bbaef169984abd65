#include "dpsi/prime_table.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace dpsi {

namespace {

std::vector<std::uint32_t> small_primes(std::uint32_t limit)
{
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i)
            composite[j] = true;
    }
    return out;
}

std::uint32_t isqrt32(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return static_cast<std::uint32_t>(r);
}

// Odd primes in [lo, hi), lo odd. base holds the odd primes up to sqrt(hi).
void sieve_segment(std::uint64_t lo, std::uint64_t hi,
                   std::span<const std::uint32_t> base,
                   std::vector<std::uint32_t>& out)
{
    const std::size_t count = static_cast<std::size_t>((hi - lo + 1) / 2);
    std::vector<char> composite(count, 0);
    for (std::uint32_t p : base) {
        const std::uint64_t pp = std::uint64_t{p} * p;
        if (pp >= hi)
            break;
        std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
        if (start % 2 == 0)
            start += p;
        for (std::uint64_t j = start; j < hi; j += 2 * std::uint64_t{p})
            composite[(j - lo) / 2] = 1;
    }
    for (std::size_t i = 0; i < count; ++i)
        if (!composite[i])
            out.push_back(static_cast<std::uint32_t>(lo + 2 * i));
}

double estimated_prime_count(std::uint64_t limit)
{
    const double x = static_cast<double>(limit);
    if (x < 100)
        return 25;
    return 1.26 * x / std::log(x);
}

} // namespace

std::uint64_t PrimeTable::nth_prime(std::size_t n) const
{
    if (n == 0 || n > primes_.size())
        throw RangeError("nth_prime: index " + std::to_string(n) + " outside 1.." +
                         std::to_string(primes_.size()));
    return primes_[n - 1];
}

std::size_t PrimeTable::prime_count(std::uint64_t x) const
{
    if (x > limit_)
        throw RangeError("prime_count: " + std::to_string(x) + " exceeds sieve limit " +
                         std::to_string(limit_));
    return static_cast<std::size_t>(
        std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

CertifiedValue PrimeTable::theta(std::uint64_t x) const
{
    if (x < 2 || x > limit_)
        throw RangeError("theta: " + std::to_string(x) + " outside 2.." +
                         std::to_string(limit_));
    return theta_at_index(prime_count(x));
}

CertifiedValue PrimeTable::theta_at_index(std::size_t n) const
{
    if (n == 0 || n > primes_.size())
        throw RangeError("theta_at_index: index " + std::to_string(n) + " outside 1.." +
                         std::to_string(primes_.size()));
    return CertifiedValue{theta_value_[n - 1], theta_radius_[n - 1]};
}

PrimeTable PrimeTable::truncated(std::uint64_t new_limit) const
{
    if (new_limit < 2 || new_limit > limit_)
        throw RangeError("truncated: limit " + std::to_string(new_limit) + " outside 2.." +
                         std::to_string(limit_));
    const std::size_t k = prime_count(new_limit);
    PrimeTable t;
    t.limit_ = new_limit;
    t.primes_.assign(primes_.begin(), primes_.begin() + k);
    t.theta_value_.assign(theta_value_.begin(), theta_value_.begin() + k);
    t.theta_radius_.assign(theta_radius_.begin(), theta_radius_.begin() + k);
    return t;
}

PrimeTable build_table(std::uint64_t limit, const SieveOptions& options)
{
    if (limit < 2)
        throw DomainError("build_table: limit must be at least 2");
    if (limit > PrimeTable::kMaxLimit)
        throw ResourceError("build_table: limit " + std::to_string(limit) +
                            " exceeds the 32-bit prime storage");
    const std::size_t segment = std::max<std::size_t>(options.segment_size, 64);
    const unsigned workers = std::max(1u, options.workers);
    const double bytes = estimated_prime_count(limit) * (4 + 8 + 8) +
                         static_cast<double>(segment) * workers;
    if (bytes > static_cast<double>(options.memory_budget))
        throw ResourceError("build_table: limit " + std::to_string(limit) + " needs about " +
                            std::to_string(static_cast<std::uint64_t>(bytes)) +
                            " bytes, over the memory budget of " +
                            std::to_string(options.memory_budget));

    std::vector<std::uint32_t> base = small_primes(isqrt32(limit) + 1);
    std::span<const std::uint32_t> odd_base(base.data() + 1, base.size() - 1);

    // Segment k covers odd numbers in [3 + 2*k*segment, 3 + 2*(k+1)*segment).
    const std::uint64_t span_per_segment = 2 * std::uint64_t{segment};
    const std::uint64_t end = limit + 1;
    const std::size_t n_segments =
        end <= 3 ? 0 : static_cast<std::size_t>((end - 3 + span_per_segment - 1) / span_per_segment);
    std::vector<std::vector<std::uint32_t>> found(n_segments);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < n_segments; k = next++) {
            const std::uint64_t lo = 3 + k * span_per_segment;
            const std::uint64_t hi = std::min(end, lo + span_per_segment);
            sieve_segment(lo, hi, odd_base, found[k]);
        }
    };
    if (workers == 1 || n_segments < 2) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < std::min<std::size_t>(workers, n_segments); ++i)
            pool.emplace_back(work);
    }

    PrimeTable t;
    t.limit_ = limit;
    std::size_t total = 1;
    for (const auto& f : found)
        total += f.size();
    t.primes_.reserve(total);
    t.primes_.push_back(2);
    for (auto& f : found) {
        t.primes_.insert(t.primes_.end(), f.begin(), f.end());
        std::vector<std::uint32_t>().swap(f);
    }

    // Ascending order only, so the prefix is independent of `workers`.
    t.theta_value_.reserve(t.primes_.size());
    t.theta_radius_.reserve(t.primes_.size());
    CompensatedSum<double> sum;
    for (std::uint32_t p : t.primes_) {
        sum.add(cv_log(CertifiedValue::exact(p)));
        const CertifiedValue v = sum.result();
        t.theta_value_.push_back(v.value);
        t.theta_radius_.push_back(v.radius);
    }
    return t;
}

std::uint64_t limit_for_prime_count(std::size_t n)
{
    if (n < 6)
        return 13;
    const double x = static_cast<double>(n);
    // p_n < n (log n + log log n) for n >= 6.
    return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 2;
}

} // namespace dpsi
