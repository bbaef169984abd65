#include "dpsi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dpsi {

const char* bound_name(BoundKind kind)
{
    switch (kind) {
    case BoundKind::RsProduct: return "rs";
    case BoundKind::ZetaTail: return "zeta-tail";
    case BoundKind::Fonda: return "fonda";
    case BoundKind::RobinLog: return "robin";
    case BoundKind::CorollaryThreshold: return "corollary";
    case BoundKind::ProofInequality: return "proof-ineq";
    }
    return "?";
}

const std::vector<BoundKind>& all_bounds()
{
    static const std::vector<BoundKind> kinds{
        BoundKind::RsProduct, BoundKind::ZetaTail,           BoundKind::Fonda,
        BoundKind::RobinLog,  BoundKind::CorollaryThreshold, BoundKind::ProofInequality,
    };
    return kinds;
}

std::optional<BoundKind> parse_bound_name(std::string_view name)
{
    for (BoundKind k : all_bounds())
        if (name == bound_name(k))
            return k;
    return std::nullopt;
}

std::size_t bound_min_index(BoundKind kind)
{
    switch (kind) {
    case BoundKind::RsProduct: return 1;
    case BoundKind::ZetaTail: return 2;
    case BoundKind::Fonda: return kFondaMinIndex;
    case BoundKind::RobinLog: return 3;
    case BoundKind::CorollaryThreshold: return kFondaMinIndex;
    case BoundKind::ProofInequality: return 2;
    }
    return 1;
}

template <class T>
BoundSides<T> bound_sides(BoundKind kind, const EulerSums<T>& sums, std::uint64_t x)
{
    const auto& c = Constants<T>::get();
    const Ball<T> one = Ball<T>::exact(T(1));
    const auto p = from_uint<T>(sums.prime());
    switch (kind) {
    case BoundKind::RsProduct: {
        const Ball<T> log_x = cv_log(from_uint<T>(x));
        return {cv_exp(cv_neg(sums.log_totient())),
                cv_mul(c.e_gamma, cv_add(log_x, cv_div(one, log_x))), Claim::LessEqual};
    }
    case BoundKind::ZetaTail:
        return {cv_mul(c.zeta2, cv_exp(sums.log_zeta_part())),
                cv_exp(cv_div(Ball<T>::exact(T(2)), p)), Claim::LessEqual};
    case BoundKind::Fonda: {
        const Ball<T> log_p = cv_log(p);
        const Ball<T> log_theta = cv_log(sums.theta());
        const Ball<T> growth = cv_exp(cv_add(c.euler_gamma, cv_div(Ball<T>::exact(T(2)), p)));
        const Ball<T> tail = cv_add(log_theta, cv_div(Ball<T>::exact(T(1.125)), log_p));
        return {cv_exp(sums.log_psi()), cv_mul(cv_div(growth, c.zeta2), tail), Claim::LessEqual};
    }
    case BoundKind::RobinLog: {
        const Ball<T> log_p = cv_log(p);
        return {log_p, cv_add(cv_log(sums.theta()), cv_div(Ball<T>::exact(T(0.125)), log_p)),
                Claim::Less};
    }
    case BoundKind::CorollaryThreshold: {
        const Ball<T> denom = cv_mul(cv_log(p), cv_log(sums.theta()));
        const Ball<T> factor = cv_add(one, cv_div(Ball<T>::exact(T(1.125)), denom));
        return {cv_mul(cv_exp(cv_div(Ball<T>::exact(T(2)), p)), factor), c.zeta2,
                Claim::LessEqual};
    }
    case BoundKind::ProofInequality: {
        const Ball<T> log_log_theta = cv_log(cv_log(sums.theta()));
        const Ball<T> log_g =
            cv_add(cv_add(cv_log(c.e_gamma_over_zeta2), log_log_theta), sums.log_psi_inv());
        const Ball<T> log_f =
            cv_add(cv_add(c.euler_gamma, log_log_theta), sums.log_totient());
        return {log_g, cv_sub(log_f, cv_div(Ball<T>::exact(T(2)), from_uint<T>(x))),
                Claim::GreaterEqual};
    }
    }
    throw DomainError("bound_sides: unknown bound");
}

template BoundSides<double> bound_sides(BoundKind, const EulerSums<double>&, std::uint64_t);
template BoundSides<Quad> bound_sides(BoundKind, const EulerSums<Quad>&, std::uint64_t);

namespace {

bool is_index_bound(BoundKind kind)
{
    return kind != BoundKind::RsProduct && kind != BoundKind::ProofInequality;
}

// Evaluation point for scan index n.
std::uint64_t scan_point(const PrimeTable& table, BoundKind kind, std::size_t n)
{
    switch (kind) {
    case BoundKind::RsProduct: return table.nth_prime(n);
    case BoundKind::ProofInequality: return table.nth_prime(n + 1) - 1;
    default: return n;
    }
}

std::uint64_t sides_x(const EulerSums<double>& sums, BoundKind kind, std::uint64_t point)
{
    return is_index_bound(kind) ? sums.prime() : point;
}

// Evaluates with `sums` already at the right index; `ext` is advanced
// lazily (forward only) if escalation is needed.
BoundReport evaluate(BoundKind kind, std::uint64_t point, const EulerSums<double>& sums,
                     std::optional<EulerSums<Quad>>& ext, const PrimeTable& table, bool escalate)
{
    const std::uint64_t x = sides_x(sums, kind, point);
    const auto sides = bound_sides(kind, sums, x);
    BoundReport r;
    r.kind = kind;
    r.point = point;
    r.lhs = sides.lhs;
    r.rhs = sides.rhs;
    r.claim = sides.claim;
    r.verdict = compare(sides.lhs, sides.rhs, sides.claim);
    if (r.verdict.status == Status::Inconclusive && escalate) {
        if (!ext || ext->index() > sums.index())
            ext.emplace(table);
        ext->advance_to(sums.index());
        const auto hp = bound_sides(kind, *ext, x);
        r.lhs = narrow(hp.lhs);
        r.rhs = narrow(hp.rhs);
        r.verdict = narrow(compare(hp.lhs, hp.rhs, hp.claim));
        r.escalated = true;
    }
    return r;
}

void require_index(const PrimeTable& table, BoundKind kind, std::size_t n)
{
    if (n < bound_min_index(kind)) {
        std::string msg = std::string(bound_name(kind)) + ": n = " + std::to_string(n) +
                          " is below the validity range n >= " +
                          std::to_string(bound_min_index(kind));
        if (kind == BoundKind::Fonda || kind == BoundKind::CorollaryThreshold)
            msg += " (the bound assumes p_n >= 20000)";
        throw DomainError(msg);
    }
    if (n > table.size())
        throw RangeError(std::string(bound_name(kind)) + ": n = " + std::to_string(n) +
                         " exceeds the " + std::to_string(table.size()) + " sieved primes");
}

BoundReport index_bound(const PrimeTable& table, BoundKind kind, std::size_t n, bool escalate)
{
    require_index(table, kind, n);
    EulerSums<double> sums(table);
    sums.advance_to(n);
    std::optional<EulerSums<Quad>> ext;
    return evaluate(kind, n, sums, ext, table, escalate);
}

BoundReport x_bound(const PrimeTable& table, BoundKind kind, std::uint64_t x,
                    std::uint64_t min_x, bool escalate)
{
    if (x < min_x)
        throw DomainError(std::string(bound_name(kind)) + ": x = " + std::to_string(x) +
                          " is below the validity range x >= " + std::to_string(min_x));
    if (x > table.limit())
        throw RangeError(std::string(bound_name(kind)) + ": x = " + std::to_string(x) +
                         " exceeds sieve limit " + std::to_string(table.limit()));
    EulerSums<double> sums(table);
    sums.advance_to(table.prime_count(x));
    std::optional<EulerSums<Quad>> ext;
    return evaluate(kind, x, sums, ext, table, escalate);
}

} // namespace

BoundReport rs_product_bound(const PrimeTable& table, std::uint64_t x, bool escalate)
{
    return x_bound(table, BoundKind::RsProduct, x, 2, escalate);
}

BoundReport zeta_tail_bound(const PrimeTable& table, std::size_t n, bool escalate)
{
    return index_bound(table, BoundKind::ZetaTail, n, escalate);
}

BoundReport fonda_bound(const PrimeTable& table, std::size_t n, bool escalate)
{
    return index_bound(table, BoundKind::Fonda, n, escalate);
}

BoundReport robin_log_bound(const PrimeTable& table, std::size_t n, bool escalate)
{
    return index_bound(table, BoundKind::RobinLog, n, escalate);
}

BoundReport corollary_threshold(const PrimeTable& table, std::size_t n, bool escalate)
{
    return index_bound(table, BoundKind::CorollaryThreshold, n, escalate);
}

BoundReport proof_inequality(const PrimeTable& table, std::uint64_t x, bool escalate)
{
    return x_bound(table, BoundKind::ProofInequality, x, 3, escalate);
}

CertifiedValue corollary_lhs(const PrimeTable& table, std::size_t n)
{
    require_index(table, BoundKind::CorollaryThreshold, n);
    EulerSums<double> sums(table);
    sums.advance_to(n);
    return bound_sides(BoundKind::CorollaryThreshold, sums, sums.prime()).lhs;
}

Verdict corollary_monotone(const PrimeTable& table, std::size_t n)
{
    require_index(table, BoundKind::CorollaryThreshold, n + 1);
    EulerSums<double> sums(table);
    sums.advance_to(n);
    const auto a = bound_sides(BoundKind::CorollaryThreshold, sums, sums.prime()).lhs;
    sums.advance();
    const auto b = bound_sides(BoundKind::CorollaryThreshold, sums, sums.prime()).lhs;
    return compare(b, a, Claim::Less);
}

std::size_t StridePolicy::next(std::size_t n) const
{
    if (n < dense_until || ratio <= 1.0)
        return n + 1;
    const double scaled = std::ceil(static_cast<double>(n) * ratio);
    return std::max(n + 1, static_cast<std::size_t>(scaled));
}

std::string StridePolicy::describe() const
{
    if (dense_until == static_cast<std::size_t>(-1) || ratio <= 1.0)
        return "every";
    std::ostringstream s;
    s << "every<=" << dense_until << ",geometric*" << ratio;
    return s.str();
}

ScanReport scan_bound(const PrimeTable& table, BoundKind kind, std::size_t from, std::size_t to,
                      const ScanOptions& options)
{
    if (from > to)
        throw RangeError(std::string("scan ") + bound_name(kind) + ": empty range " +
                         std::to_string(from) + ".." + std::to_string(to));
    require_index(table, kind, from);
    const std::size_t needed = kind == BoundKind::ProofInequality ? to + 1 : to;
    if (needed > table.size())
        throw RangeError(std::string("scan ") + bound_name(kind) + ": index " +
                         std::to_string(needed) + " exceeds the " +
                         std::to_string(table.size()) + " sieved primes");

    ScanReport rep;
    rep.bound = bound_name(kind);
    rep.from = from;
    rep.to = to;
    rep.stride = options.stride.describe();

    EulerSums<double> sums(table);
    std::optional<EulerSums<Quad>> ext;
    std::optional<std::size_t> last_not_holding;
    bool have_worst = false;
    for (std::size_t n = from;; n = std::min(options.stride.next(n), to)) {
        sums.advance_to(n);
        const std::uint64_t point = scan_point(table, kind, n);
        const BoundReport r = evaluate(kind, point, sums, ext, table, options.escalate);
        ++rep.points_checked;
        rep.escalations += r.escalated ? 1 : 0;
        switch (r.verdict.status) {
        case Status::Holds: ++rep.holds; break;
        case Status::Inconclusive: ++rep.inconclusive; break;
        case Status::Fails: ++rep.fails; break;
        }
        if (r.verdict.status != Status::Holds) {
            last_not_holding = n;
            auto& list = r.verdict.status == Status::Fails ? rep.failing_points
                                                           : rep.inconclusive_points;
            if (list.size() < 32)
                list.push_back(point);
        }
        if (!have_worst || r.verdict.margin.value < rep.worst_margin.value) {
            have_worst = true;
            rep.worst_margin = r.verdict.margin;
            rep.worst_at = n;
            rep.worst_point = point;
        }
        if (n == to)
            break;
    }
    if (!last_not_holding)
        rep.holds_from = from;
    else if (*last_not_holding < to)
        rep.holds_from = *last_not_holding + 1;
    return rep;
}

MonotoneReport scan_corollary_monotone(const PrimeTable& table, std::size_t from, std::size_t to)
{
    require_index(table, BoundKind::CorollaryThreshold, from);
    require_index(table, BoundKind::CorollaryThreshold, to);
    MonotoneReport rep;
    rep.from = from;
    rep.to = to;
    EulerSums<double> sums(table);
    sums.advance_to(from);
    CertifiedValue prev = bound_sides(BoundKind::CorollaryThreshold, sums, sums.prime()).lhs;
    for (std::size_t n = from + 1; n <= to; ++n) {
        sums.advance();
        const CertifiedValue cur =
            bound_sides(BoundKind::CorollaryThreshold, sums, sums.prime()).lhs;
        const Verdict v = compare(cur, prev, Claim::Less);
        ++rep.pairs_checked;
        if (v.status != Status::Holds) {
            ++rep.violations;
            rep.violating.push_back(n - 1);
        }
        if (rep.pairs_checked == 1 || v.margin.value < rep.smallest_drop.value) {
            rep.smallest_drop = v.margin;
            rep.smallest_drop_at = n - 1;
        }
        prev = cur;
    }
    return rep;
}

} // namespace dpsi
