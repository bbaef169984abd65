#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpsi/certified.hpp"
#include "dpsi/primorial.hpp"

namespace dpsi {

// Explicit analytic bounds used in the unconditional upper bound and in
// the lower-bound criterion, each as a checkable "lhs <op> rhs".
//
//   RsProduct           prod_{p<=x} (1-1/p)^-1 <= e^gamma (log x + 1/log x),  x >= 2
//   ZetaTail            zeta(2) prod_{p<=p_n} (1-1/p^2) <= exp(2/p_n),        n >= 2
//   Fonda               Psi(N_n)/N_n <= exp(gamma + 2/p_n)/zeta(2)
//                                       * (log log N_n + 1.125/log p_n),     n >= 2263
//   RobinLog            log p_n < log log N_n + 0.125/log p_n,                n >= 3
//   CorollaryThreshold  exp(2/p_n) (1 + 1.125/(log p_n log log N_n)) <= zeta(2), n >= 2263
//   ProofInequality     log g(x) >= log f(x) - 2/x,                           x >= 3
enum class BoundKind { RsProduct, ZetaTail, Fonda, RobinLog, CorollaryThreshold, ProofInequality };

inline constexpr std::size_t kFondaMinIndex = 2263;

const char* bound_name(BoundKind kind);
std::optional<BoundKind> parse_bound_name(std::string_view name);
const std::vector<BoundKind>& all_bounds();

// Smallest primorial index a scan of this bound may start at.
std::size_t bound_min_index(BoundKind kind);

struct BoundReport {
    BoundKind kind = BoundKind::RsProduct;
    std::uint64_t point = 0; // x for RsProduct / ProofInequality, else n
    CertifiedValue lhs;
    CertifiedValue rhs;
    Claim claim = Claim::LessEqual;
    Verdict verdict;
    bool escalated = false;
};

// Point evaluators. INCONCLUSIVE results are retried in extended precision
// when `escalate` is set.
BoundReport rs_product_bound(const PrimeTable& table, std::uint64_t x, bool escalate = true);
BoundReport zeta_tail_bound(const PrimeTable& table, std::size_t n, bool escalate = true);
BoundReport fonda_bound(const PrimeTable& table, std::size_t n, bool escalate = true);
BoundReport robin_log_bound(const PrimeTable& table, std::size_t n, bool escalate = true);
BoundReport corollary_threshold(const PrimeTable& table, std::size_t n, bool escalate = true);
BoundReport proof_inequality(const PrimeTable& table, std::uint64_t x, bool escalate = true);

// Left side of the corollary threshold, and the pairwise check
// lhs(n+1) < lhs(n).
CertifiedValue corollary_lhs(const PrimeTable& table, std::size_t n);
Verdict corollary_monotone(const PrimeTable& table, std::size_t n);

// Generic sides of a bound from sums positioned at the right index.
template <class T>
struct BoundSides {
    Ball<T> lhs;
    Ball<T> rhs;
    Claim claim;
};

template <class T>
BoundSides<T> bound_sides(BoundKind kind, const EulerSums<T>& sums, std::uint64_t x);

// Which indices a range scan evaluates: every index up to dense_until,
// then a geometric progression with the given ratio. The last index of the
// range is always included.
struct StridePolicy {
    std::size_t dense_until = 10000;
    double ratio = 1.01;

    static StridePolicy every() { return StridePolicy{static_cast<std::size_t>(-1), 1.0}; }
    std::size_t next(std::size_t n) const;
    std::string describe() const;
};

struct ScanOptions {
    StridePolicy stride;
    bool escalate = true;
};

struct ScanReport {
    std::string bound;
    std::size_t from = 0;
    std::size_t to = 0;
    std::string stride;
    std::size_t points_checked = 0;
    CertifiedValue worst_margin;
    std::size_t worst_at = 0;        // primorial index
    std::uint64_t worst_point = 0;   // evaluation point (x or n)
    std::size_t holds = 0;
    std::size_t inconclusive = 0;
    std::size_t fails = 0;
    std::size_t escalations = 0;
    // Smallest checked index from which every checked point HOLDS.
    std::optional<std::size_t> holds_from;
    // First points (x or n) that did not hold, at most 32 of each.
    std::vector<std::uint64_t> failing_points;
    std::vector<std::uint64_t> inconclusive_points;
};

// Scan over primorial indices n in [from, to]. RsProduct is evaluated at
// x = p_n (the worst x in [p_n, p_{n+1})), ProofInequality at
// x = p_{n+1} - 1 (the worst x in that gap), the others at n.
ScanReport scan_bound(const PrimeTable& table, BoundKind kind, std::size_t from, std::size_t to,
                      const ScanOptions& options = {});

struct MonotoneReport {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t pairs_checked = 0;
    std::size_t violations = 0;
    CertifiedValue smallest_drop;
    std::size_t smallest_drop_at = 0;
    std::vector<std::size_t> violating; // n with lhs(n+1) < lhs(n) not certified
};

// lhs(n+1) < lhs(n) for every consecutive pair in [from, to].
MonotoneReport scan_corollary_monotone(const PrimeTable& table, std::size_t from, std::size_t to);

extern template BoundSides<double> bound_sides(BoundKind, const EulerSums<double>&, std::uint64_t);
extern template BoundSides<Quad> bound_sides(BoundKind, const EulerSums<Quad>&, std::uint64_t);

} // namespace dpsi
