#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpsi/bounds.hpp"
#include "dpsi/prime_table.hpp"

namespace dpsi {

using Json = nlohmann::ordered_json;

// Outcome of one claim over a finite range. HOLDS iff there are neither
// counterexamples nor unresolved points.
struct ClaimResult {
    std::string claim_id;
    std::string statement;
    std::uint64_t range_from = 0;
    std::uint64_t range_to = 0;
    std::size_t points_checked = 0;
    std::vector<std::uint64_t> counterexamples;
    std::vector<std::uint64_t> inconclusive;
    Json summary = Json::object();

    Status status() const;
};

struct VerifyConfig {
    std::uint64_t champion_limit = 1'000'000;
    std::size_t n_max = 100'000;
    std::size_t reduction_samples = 10'000;
    std::size_t reduction_max_index = 10;
    std::uint64_t sandwich_limit = 100'000;
    std::uint64_t seed = 0x5eed'd1ce'2024ull;
    bool escalate = true;
    unsigned workers = 1;
};

// n <= limit with Psi(n)/n > Psi(m)/m for all m < n, by exact rational
// comparison. 1 is the baseline and is not reported; ties are not
// champions.
std::vector<std::uint64_t> champions(const PrimeTable& table, std::uint64_t limit);

ClaimResult champion_scan(const PrimeTable& table, std::uint64_t limit);

// R(m) <= R(N_n) for m in [N_n, N_{n+1}), exhaustively when the range has
// at most `samples` elements (or samples == 0), otherwise on `samples`
// pseudo-random m plus both ends.
ClaimResult reduction_check(const PrimeTable& table, std::size_t n_index, std::size_t samples,
                            std::uint64_t seed);

// The three steps of R(n) < e^gamma for n > 30:
//   [0] "cor-upper-a"  every 31 <= n <= 210, plus the witnesses below 31
//   [1] "cor-upper-b"  R(N_n) < e^gamma for 4 <= n <= 2262
//   [2] "cor-upper-c"  the threshold inequality at n = 2263 and its
//                      monotonicity up to mono_to
std::vector<ClaimResult> verify_upper(const PrimeTable& table, std::size_t mono_to,
                                      bool escalate = true);
ClaimResult verify_upper_small(const PrimeTable& table);
ClaimResult verify_upper_primorial(const PrimeTable& table, bool escalate = true);
ClaimResult verify_upper_threshold(const PrimeTable& table, std::size_t mono_to);

// R(N_n) > e^gamma/zeta(2) for 3 <= n <= n_max, with the equivalent
// g(p_n) < 1 checked alongside.
ClaimResult verify_lower(const PrimeTable& table, std::size_t n_max, bool escalate = true);

// R(N_n) - e^gamma/zeta(2) at the checkpoints: positive and strictly
// decreasing.
ClaimResult mertens_limit_trend(const PrimeTable& table,
                                const std::vector<std::size_t>& checkpoints);

// n^2 > phi(n) Psi(n) (exact) and phi(n) Psi(n) zeta(2) > n^2 (certified).
ClaimResult sandwich_check(const PrimeTable& table, std::uint64_t limit);

// g(p_n) * R(N_n) overlaps e^gamma/zeta(2) for 2 <= n <= n_max.
ClaimResult identity_check(const PrimeTable& table, std::size_t n_max);

// A bound scan as a claim over [bound_min_index, n_max], every index.
ClaimResult bound_claim(const PrimeTable& table, BoundKind kind, std::size_t n_max,
                        bool escalate = true);

struct ClaimEntry {
    std::string id;
    std::string statement;
    std::function<ClaimResult(const PrimeTable&, const VerifyConfig&)> run;
};

class UnknownClaim : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

const std::vector<ClaimEntry>& claim_registry();

// Expands "all" and group aliases ("cor-upper") into registry ids, in
// registry order, without duplicates. Throws UnknownClaim.
std::vector<std::string> expand_claim_ids(const std::vector<std::string>& ids);

// Runs the claims on up to config.workers threads; results come back in
// the order of `ids` regardless of scheduling.
std::vector<ClaimResult> run_claims(const PrimeTable& table, const std::vector<std::string>& ids,
                                    const VerifyConfig& config);

// Sieve limit that covers every claim under `config`.
std::uint64_t required_sieve_limit(const VerifyConfig& config);

Json to_json(const CertifiedValue& v);
Json to_json(const ClaimResult& r);

} // namespace dpsi
