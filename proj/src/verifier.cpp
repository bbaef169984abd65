#include "dpsi/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "dpsi/arith.hpp"
#include "dpsi/primorial.hpp"

namespace dpsi {

Status ClaimResult::status() const
{
    if (!counterexamples.empty())
        return Status::Fails;
    if (!inconclusive.empty())
        return Status::Inconclusive;
    return Status::Holds;
}

Json to_json(const CertifiedValue& v)
{
    return Json{{"value", v.value}, {"radius", v.radius}};
}

Json to_json(const ClaimResult& r)
{
    Json j;
    j["claim_id"] = r.claim_id;
    j["statement"] = r.statement;
    j["status"] = status_name(r.status());
    j["range"] = Json::array({r.range_from, r.range_to});
    j["points_checked"] = r.points_checked;
    j["counterexamples"] = r.counterexamples;
    j["inconclusive"] = r.inconclusive;
    j["summary"] = r.summary;
    return j;
}

namespace {

using u128 = unsigned __int128;

// Psi(n)/n as an unreduced fraction of 64-bit words; exact for n <= 1e12.
struct SmallRatio {
    std::uint64_t num = 1;
    std::uint64_t den = 1;
};

SmallRatio small_ratio(const Factorization& f)
{
    SmallRatio r;
    for (const auto& pe : f.factors) {
        r.num *= pe.prime + 1;
        r.den *= pe.prime;
    }
    return r;
}

bool greater(const SmallRatio& a, const SmallRatio& b)
{
    return u128{a.num} * b.den > u128{b.num} * a.den;
}

std::vector<std::uint64_t> primorials_up_to(const PrimeTable& table, std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    u128 N = 1;
    for (std::size_t k = 1; k <= table.size(); ++k) {
        N *= table.nth_prime(k);
        if (N > limit)
            break;
        out.push_back(static_cast<std::uint64_t>(N));
    }
    return out;
}

void record_margin(Json& summary, const char* key, const CertifiedValue& m, std::uint64_t at,
                   bool smaller)
{
    if (!summary.contains(key) || (smaller && m.value < summary[key]["value"].get<double>()) ||
        (!smaller && m.value > summary[key]["value"].get<double>())) {
        Json j = to_json(m);
        j["at"] = at;
        summary[key] = j;
    }
}

const Constants<double>& consts()
{
    return Constants<double>::get();
}

} // namespace

// ---------------------------------------------------------------------------
// Champions

std::vector<std::uint64_t> champions(const PrimeTable& table, std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    SmallRatio best; // Psi(1)/1
    for (std::uint64_t n = 2; n <= limit; ++n) {
        const SmallRatio r = small_ratio(factorize(table, n));
        if (greater(r, best)) {
            best = r;
            out.push_back(n);
        }
    }
    return out;
}

ClaimResult champion_scan(const PrimeTable& table, std::uint64_t limit)
{
    ClaimResult res;
    res.claim_id = "prop1-champions";
    res.statement = "the champions of Psi(x)/x are exactly the primorials";
    res.range_from = 1;
    res.range_to = limit;
    res.points_checked = limit;
    const auto champs = champions(table, limit);
    const auto prims = primorials_up_to(table, limit);
    std::set_symmetric_difference(champs.begin(), champs.end(), prims.begin(), prims.end(),
                                  std::back_inserter(res.counterexamples));
    res.summary["champions"] = champs;
    res.summary["primorials"] = prims;
    res.summary["champion_count"] = champs.size();
    return res;
}

// ---------------------------------------------------------------------------
// Reduction to primorials

ClaimResult reduction_check(const PrimeTable& table, std::size_t n_index, std::size_t samples,
                            std::uint64_t seed)
{
    if (n_index < 2)
        throw RangeError("reduction_check: n_index must be at least 2");
    const Factorization Nf = primorial_factorization(table, n_index);
    const Factorization Nnext = primorial_factorization(table, n_index + 1);
    const std::uint64_t lo = Nf.n;
    const std::uint64_t hi = Nnext.n - 1;
    // Capability check up front: the top of the range must be factorable.
    factorize(table, hi);

    ClaimResult res;
    res.claim_id = "prop2-reduction";
    res.statement = "R(m) <= R(N_n) for N_n <= m < N_{n+1}";
    res.range_from = lo;
    res.range_to = hi;

    const SmallRatio target_ratio = small_ratio(Nf);
    const CertifiedValue target_R = ratio_R(Nf);
    std::size_t certified = 0, closed_exact = 0;
    auto check = [&](std::uint64_t m) {
        const Factorization f = factorize(table, m);
        ++res.points_checked;
        if (greater(small_ratio(f), target_ratio)) {
            res.counterexamples.push_back(m);
            return;
        }
        const Verdict v = compare(ratio_R(f), target_R, Claim::LessEqual);
        if (v.status == Status::Holds) {
            ++certified;
        } else if (v.status == Status::Fails) {
            res.counterexamples.push_back(m);
        } else {
            // Psi(m)/m <= Psi(N_n)/N_n exactly and log log m >= log log N_n > 0.
            ++closed_exact;
        }
    };

    const std::uint64_t span = hi - lo + 1;
    const bool exhaustive = samples == 0 || span <= samples;
    if (exhaustive) {
        for (std::uint64_t m = lo; m <= hi; ++m)
            check(m);
    } else {
        std::mt19937_64 rng(seed ^ n_index);
        check(lo);
        check(hi);
        for (std::size_t i = 0; i < samples; ++i)
            check(lo + rng() % span);
    }
    res.summary["n_index"] = n_index;
    res.summary["mode"] = exhaustive ? "exhaustive" : "sampled";
    res.summary["certified_by_floating_point"] = certified;
    res.summary["closed_by_exact_ratio"] = closed_exact;
    res.summary["R_Nn"] = to_json(target_R);
    return res;
}

// ---------------------------------------------------------------------------
// Upper bound R(n) < e^gamma for n > 30

ClaimResult verify_upper_small(const PrimeTable& table)
{
    ClaimResult res;
    res.claim_id = "cor-upper-a";
    res.statement = "R(n) < e^gamma for 31 <= n <= 210";
    res.range_from = 31;
    res.range_to = 210;
    const auto& eg = consts().e_gamma;
    for (std::uint64_t n = 31; n <= 210; ++n) {
        const Verdict v = compare(ratio_R(table, n), eg, Claim::Less);
        ++res.points_checked;
        if (v.status == Status::Fails)
            res.counterexamples.push_back(n);
        else if (v.status == Status::Inconclusive)
            res.inconclusive.push_back(n);
        record_margin(res.summary, "worst_margin", v.margin, n, true);
    }
    std::vector<std::uint64_t> witnesses;
    for (std::uint64_t n = 3; n <= 30; ++n)
        if (compare(ratio_R(table, n), eg, Claim::GreaterEqual).status == Status::Holds)
            witnesses.push_back(n);
    const CertifiedValue r30 = ratio_R(table, 30);
    const bool sharp = compare(r30, eg, Claim::Greater).status == Status::Holds;
    res.summary["witnesses_below_31"] = witnesses;
    res.summary["R_30"] = to_json(r30);
    res.summary["sharpness_witness_30"] = sharp;
    if (!sharp)
        res.inconclusive.push_back(30);
    return res;
}

ClaimResult verify_upper_primorial(const PrimeTable& table, bool escalate)
{
    constexpr std::size_t first = 4, last = kFondaMinIndex - 1;
    ClaimResult res;
    res.claim_id = "cor-upper-b";
    res.statement = "R(N_n) < e^gamma for 4 <= n <= 2262";
    res.range_from = first;
    res.range_to = last;
    const auto& eg = consts().e_gamma;
    PrimorialStream stream(table, last);
    std::optional<ExtendedPrimorialStream> ext;
    std::size_t escalations = 0;
    while (auto pt = stream.next()) {
        if (pt->n < first)
            continue;
        Verdict v = compare(pt->R, eg, Claim::Less);
        if (v.status == Status::Inconclusive && escalate) {
            if (!ext)
                ext.emplace(table, last);
            const auto hp = ext->seek(pt->n);
            v = narrow(compare(hp.R, Constants<Quad>::get().e_gamma, Claim::Less));
            ++escalations;
        }
        ++res.points_checked;
        if (v.status == Status::Fails)
            res.counterexamples.push_back(pt->n);
        else if (v.status == Status::Inconclusive)
            res.inconclusive.push_back(pt->n);
        record_margin(res.summary, "worst_margin", v.margin, pt->n, true);
    }
    res.summary["escalations"] = escalations;
    return res;
}

ClaimResult verify_upper_threshold(const PrimeTable& table, std::size_t mono_to)
{
    ClaimResult res;
    res.claim_id = "cor-upper-c";
    res.statement = "exp(2/p_n)(1 + 1.125/(log p_n log log N_n)) <= zeta(2) at n = 2263, "
                    "left side decreasing in n";
    res.range_from = kFondaMinIndex;
    res.range_to = std::max(mono_to, kFondaMinIndex + 1);
    const BoundReport at = corollary_threshold(table, kFondaMinIndex);
    ++res.points_checked;
    if (at.verdict.status == Status::Fails)
        res.counterexamples.push_back(kFondaMinIndex);
    else if (at.verdict.status == Status::Inconclusive)
        res.inconclusive.push_back(kFondaMinIndex);
    const MonotoneReport mono = scan_corollary_monotone(table, kFondaMinIndex, res.range_to);
    res.points_checked += mono.pairs_checked;
    for (std::size_t n : mono.violating)
        res.inconclusive.push_back(n);
    res.summary["p_2263"] = table.nth_prime(kFondaMinIndex);
    res.summary["lhs_2263"] = to_json(at.lhs);
    res.summary["margin_2263"] = to_json(at.verdict.margin);
    res.summary["monotone_pairs"] = mono.pairs_checked;
    res.summary["smallest_drop"] = to_json(mono.smallest_drop);
    res.summary["smallest_drop_at"] = mono.smallest_drop_at;
    return res;
}

std::vector<ClaimResult> verify_upper(const PrimeTable& table, std::size_t mono_to, bool escalate)
{
    return {verify_upper_small(table), verify_upper_primorial(table, escalate),
            verify_upper_threshold(table, mono_to)};
}

// ---------------------------------------------------------------------------
// Lower bound R(N_n) > e^gamma/zeta(2)

ClaimResult verify_lower(const PrimeTable& table, std::size_t n_max, bool escalate)
{
    if (n_max < 3)
        throw RangeError("verify_lower: n starts at 3, n_max = " + std::to_string(n_max));
    ClaimResult res;
    res.claim_id = "conj1-lower";
    res.statement = "R(N_n) > e^gamma/zeta(2) for n >= 3 (equivalently g(p_n) < 1)";
    res.range_from = 3;
    res.range_to = n_max;
    const auto& c = consts().e_gamma_over_zeta2;
    const CertifiedValue one = CertifiedValue::exact(1.0);
    PrimorialStream stream(table, n_max);
    std::optional<ExtendedPrimorialStream> ext;
    std::size_t escalations = 0;
    std::vector<std::uint64_t> dual_disagreements;
    Json checkpoints = Json::array();
    std::size_t next_checkpoint = 10;
    while (auto pt = stream.next()) {
        if (pt->n < 3)
            continue;
        Verdict vr = compare(pt->R, c, Claim::Greater);
        Verdict vg = compare(pt->g, one, Claim::Less);
        if ((vr.status == Status::Inconclusive || vg.status == Status::Inconclusive) && escalate) {
            if (!ext)
                ext.emplace(table, n_max);
            const auto hp = ext->seek(pt->n);
            vr = narrow(compare(hp.R, Constants<Quad>::get().e_gamma_over_zeta2, Claim::Greater));
            vg = narrow(compare(hp.g, ExtendedValue::exact(Quad(1)), Claim::Less));
            ++escalations;
        }
        ++res.points_checked;
        if (vr.status == Status::Fails)
            res.counterexamples.push_back(pt->n);
        else if (vr.status == Status::Inconclusive)
            res.inconclusive.push_back(pt->n);
        if (vr.status != vg.status) {
            dual_disagreements.push_back(pt->n);
            if (vr.status == Status::Holds)
                res.inconclusive.push_back(pt->n);
        }
        record_margin(res.summary, "min_margin", vr.margin, pt->n, true);
        if (pt->n == next_checkpoint || pt->n == n_max) {
            Json cp = to_json(pt->margin_lower);
            cp["n"] = pt->n;
            cp["g"] = pt->g.value;
            checkpoints.push_back(cp);
            if (pt->n == next_checkpoint)
                next_checkpoint *= 10;
        }
    }
    res.summary["checkpoints"] = checkpoints;
    res.summary["escalations"] = escalations;
    res.summary["dual_disagreements"] = dual_disagreements;
    if (!res.counterexamples.empty())
        res.summary["alert"] = "counterexample to R(N_n) > e^gamma/zeta(2): reconfirm "
                               "independently at high precision";
    return res;
}

ClaimResult mertens_limit_trend(const PrimeTable& table, const std::vector<std::size_t>& checkpoints)
{
    std::vector<std::size_t> cps = checkpoints;
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    if (cps.empty() || cps.front() < 2)
        throw RangeError("mertens_limit_trend: checkpoints must be >= 2");
    ClaimResult res;
    res.claim_id = "prop-mertens-trend";
    res.statement = "R(N_n) - e^gamma/zeta(2) is positive and decreasing across checkpoints";
    res.range_from = cps.front();
    res.range_to = cps.back();
    PrimorialStream stream(table, cps.back());
    std::optional<CertifiedValue> prev;
    Json margins = Json::array();
    for (std::size_t n : cps) {
        const PrimorialPoint pt = stream.seek(n);
        ++res.points_checked;
        const Verdict positive =
            compare(pt.margin_lower, CertifiedValue::exact(0.0), Claim::Greater);
        bool ok = positive.status == Status::Holds;
        if (prev) {
            const Verdict dec = compare(pt.margin_lower, *prev, Claim::Less);
            ok = ok && dec.status == Status::Holds;
            if (dec.status == Status::Fails || positive.status == Status::Fails)
                res.counterexamples.push_back(n);
            else if (!ok)
                res.inconclusive.push_back(n);
        } else if (!ok) {
            (positive.status == Status::Fails ? res.counterexamples : res.inconclusive).push_back(n);
        }
        Json m = to_json(pt.margin_lower);
        m["n"] = n;
        margins.push_back(m);
        prev = pt.margin_lower;
    }
    res.summary["margins"] = margins;
    res.summary["limit"] = to_json(consts().e_gamma_over_zeta2);
    return res;
}

// ---------------------------------------------------------------------------
// phi(n) Psi(n) sandwich

ClaimResult sandwich_check(const PrimeTable& table, std::uint64_t limit)
{
    ClaimResult res;
    res.claim_id = "prop-trick-sandwich";
    res.statement = "n^2 > phi(n) Psi(n) > n^2/zeta(2) for n >= 2";
    res.range_from = 2;
    res.range_to = limit;
    const auto& z2 = consts().zeta2;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        const Factorization f = factorize(table, n);
        const BigInt prod = phi(f) * psi(f);
        const BigInt square = BigInt(n) * n;
        ++res.points_checked;
        if (!(square > prod)) {
            res.counterexamples.push_back(n);
            continue;
        }
        const Verdict v = compare(cv_mul(to_certified(prod), z2), to_certified(square),
                                  Claim::Greater);
        if (v.status == Status::Fails)
            res.counterexamples.push_back(n);
        else if (v.status == Status::Inconclusive)
            res.inconclusive.push_back(n);
        const CertifiedValue rel = cv_div(v.margin, to_certified(square));
        record_margin(res.summary, "min_relative_margin", rel, n, true);
    }
    return res;
}

// ---------------------------------------------------------------------------
// g(p_n) R(N_n) = e^gamma/zeta(2)

ClaimResult identity_check(const PrimeTable& table, std::size_t n_max)
{
    ClaimResult res;
    res.claim_id = "thm-main-identity";
    res.statement = "g(p_n) R(N_n) = e^gamma/zeta(2)";
    res.range_from = 2;
    res.range_to = n_max;
    const auto& c = consts().e_gamma_over_zeta2;
    PrimorialStream stream(table, n_max);
    double worst_gap = 0, widest = 0;
    while (auto pt = stream.next()) {
        const CertifiedValue prod = cv_mul(pt->g, pt->R);
        ++res.points_checked;
        if (!overlaps(prod, c))
            res.counterexamples.push_back(pt->n);
        worst_gap = std::max(worst_gap, std::abs(prod.value - c.value));
        widest = std::max(widest, prod.radius + c.radius);
    }
    res.summary["max_abs_deviation"] = worst_gap;
    res.summary["max_combined_radius"] = widest;
    return res;
}

// ---------------------------------------------------------------------------
// Bound scans as claims

ClaimResult bound_claim(const PrimeTable& table, BoundKind kind, std::size_t n_max, bool escalate)
{
    ClaimResult res;
    const ScanOptions opts{StridePolicy::every(), escalate};
    std::size_t from = bound_min_index(kind);
    switch (kind) {
    case BoundKind::RsProduct:
        res.claim_id = "lemma-rs";
        res.statement = "prod_{p<=x} (1-1/p)^-1 <= e^gamma (log x + 1/log x) for x >= 2";
        break;
    case BoundKind::ZetaTail:
        res.claim_id = "lemma-zeta-tail";
        res.statement = "prod_{p>p_n} (1-1/p^2)^-1 <= exp(2/p_n) for n >= 2";
        break;
    case BoundKind::Fonda:
        res.claim_id = "prop-fonda";
        res.statement = "Psi(N_n)/N_n <= exp(gamma+2/p_n)/zeta(2) (log log N_n + 1.125/log p_n) "
                        "for n >= 2263";
        break;
    case BoundKind::RobinLog:
        res.claim_id = "robin-log";
        res.statement = "log p_n < log log N_n + 0.125/log p_n for n >= 2263";
        from = kFondaMinIndex;
        break;
    case BoundKind::CorollaryThreshold:
        res.claim_id = "cor-threshold";
        res.statement = "exp(2/p_n)(1 + 1.125/(log p_n log log N_n)) <= zeta(2) for n >= 2263";
        break;
    case BoundKind::ProofInequality:
        res.claim_id = "thm-main-proof-ineq";
        res.statement = "log g(x) >= log f(x) - 2/x for x >= 3";
        break;
    }
    const ScanReport rep = scan_bound(table, kind, from, n_max, opts);
    const bool by_x = kind == BoundKind::RsProduct || kind == BoundKind::ProofInequality;
    res.range_from = by_x ? (kind == BoundKind::RsProduct ? 2 : 3) : from;
    res.range_to = by_x ? (kind == BoundKind::RsProduct ? table.nth_prime(n_max)
                                                        : table.nth_prime(n_max + 1) - 1)
                        : n_max;
    res.points_checked = rep.points_checked;
    res.counterexamples = rep.failing_points;
    res.inconclusive = rep.inconclusive_points;
    res.summary["worst_margin"] = to_json(rep.worst_margin);
    res.summary["worst_at"] = rep.worst_at;
    res.summary["worst_point"] = rep.worst_point;
    res.summary["escalations"] = rep.escalations;
    res.summary["fails"] = rep.fails;
    res.summary["inconclusive"] = rep.inconclusive;
    if (kind == BoundKind::RobinLog) {
        // Where the bound starts holding is reported, not assumed.
        const ScanReport wide = scan_bound(table, kind, 3, n_max, opts);
        res.summary["exploratory_from"] = 3;
        res.summary["exploratory_fails"] = wide.fails;
        res.summary["holds_from"] = wide.holds_from ? Json(*wide.holds_from) : Json(nullptr);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Registry

namespace {

std::vector<std::size_t> default_checkpoints(std::size_t n_max)
{
    std::vector<std::size_t> cps;
    for (std::size_t n = 10; n <= n_max; n *= 10)
        cps.push_back(n);
    if (cps.empty() || cps.back() != n_max)
        cps.push_back(n_max);
    return cps;
}

ClaimResult reduction_all(const PrimeTable& table, const VerifyConfig& cfg)
{
    ClaimResult res;
    res.claim_id = "prop2-reduction";
    res.statement = "R(m) <= R(N_n) for N_n <= m < N_{n+1}";
    res.range_from = 2;
    res.range_to = cfg.reduction_max_index;
    Json per_index = Json::array();
    for (std::size_t k = 2; k <= cfg.reduction_max_index; ++k) {
        const ClaimResult r = reduction_check(table, k, cfg.reduction_samples, cfg.seed);
        res.points_checked += r.points_checked;
        res.counterexamples.insert(res.counterexamples.end(), r.counterexamples.begin(),
                                   r.counterexamples.end());
        res.inconclusive.insert(res.inconclusive.end(), r.inconclusive.begin(),
                                r.inconclusive.end());
        Json s = r.summary;
        s["range"] = Json::array({r.range_from, r.range_to});
        s["points_checked"] = r.points_checked;
        per_index.push_back(s);
    }
    res.summary["per_index"] = per_index;
    return res;
}

} // namespace

const std::vector<ClaimEntry>& claim_registry()
{
    using Cfg = VerifyConfig;
    using T = PrimeTable;
    static const std::vector<ClaimEntry> reg{
        {"prop1-champions", "primorials are exactly the champions of Psi(x)/x",
         [](const T& t, const Cfg& c) { return champion_scan(t, c.champion_limit); }},
        {"prop2-reduction", "R(m) <= R(N_n) on [N_n, N_{n+1})", reduction_all},
        {"cor-upper-a", "R(n) < e^gamma for 31 <= n <= 210",
         [](const T& t, const Cfg&) { return verify_upper_small(t); }},
        {"cor-upper-b", "R(N_n) < e^gamma for 4 <= n <= 2262",
         [](const T& t, const Cfg& c) { return verify_upper_primorial(t, c.escalate); }},
        {"cor-upper-c", "threshold inequality at n = 2263 and its monotonicity",
         [](const T& t, const Cfg& c) {
             return verify_upper_threshold(t, std::max(c.n_max, kFondaMinIndex + 1));
         }},
        {"conj1-lower", "R(N_n) > e^gamma/zeta(2) for 3 <= n <= n_max",
         [](const T& t, const Cfg& c) { return verify_lower(t, c.n_max, c.escalate); }},
        {"thm-main-identity", "g(p_n) R(N_n) = e^gamma/zeta(2)",
         [](const T& t, const Cfg& c) { return identity_check(t, c.n_max); }},
        {"prop-mertens-trend", "R(N_n) decreases toward e^gamma/zeta(2)",
         [](const T& t, const Cfg& c) {
             return mertens_limit_trend(t, default_checkpoints(c.n_max));
         }},
        {"prop-trick-sandwich", "n^2 > phi(n) Psi(n) > n^2/zeta(2)",
         [](const T& t, const Cfg& c) { return sandwich_check(t, c.sandwich_limit); }},
        {"lemma-rs", "partial Euler product bound",
         [](const T& t, const Cfg& c) {
             return bound_claim(t, BoundKind::RsProduct, c.n_max, c.escalate);
         }},
        {"lemma-zeta-tail", "tail of the zeta(2) Euler product",
         [](const T& t, const Cfg& c) {
             return bound_claim(t, BoundKind::ZetaTail, c.n_max, c.escalate);
         }},
        {"prop-fonda", "explicit upper bound on Psi(N_n)/N_n",
         [](const T& t, const Cfg& c) {
             return bound_claim(t, BoundKind::Fonda, std::max(c.n_max, kFondaMinIndex), c.escalate);
         }},
        {"robin-log", "log p_n < log log N_n + 0.125/log p_n",
         [](const T& t, const Cfg& c) {
             return bound_claim(t, BoundKind::RobinLog, std::max(c.n_max, kFondaMinIndex),
                                c.escalate);
         }},
        {"cor-threshold", "threshold inequality over the scan range",
         [](const T& t, const Cfg& c) {
             return bound_claim(t, BoundKind::CorollaryThreshold,
                                std::max(c.n_max, kFondaMinIndex), c.escalate);
         }},
        {"thm-main-proof-ineq", "log g(x) >= log f(x) - 2/x",
         [](const T& t, const Cfg& c) {
             return bound_claim(t, BoundKind::ProofInequality, c.n_max, c.escalate);
         }},
    };
    return reg;
}

std::vector<std::string> expand_claim_ids(const std::vector<std::string>& ids)
{
    const auto& reg = claim_registry();
    std::vector<bool> wanted(reg.size(), false);
    auto mark = [&](const std::string& id) {
        for (std::size_t i = 0; i < reg.size(); ++i)
            if (reg[i].id == id) {
                wanted[i] = true;
                return true;
            }
        return false;
    };
    for (const auto& id : ids) {
        if (id == "all") {
            std::fill(wanted.begin(), wanted.end(), true);
        } else if (id == "cor-upper") {
            mark("cor-upper-a");
            mark("cor-upper-b");
            mark("cor-upper-c");
        } else if (id == "bounds") {
            for (const char* b : {"lemma-rs", "lemma-zeta-tail", "prop-fonda", "robin-log",
                                  "cor-threshold", "thm-main-proof-ineq"})
                mark(b);
        } else if (!mark(id)) {
            throw UnknownClaim("unknown claim id '" + id + "'");
        }
    }
    if (ids.empty())
        std::fill(wanted.begin(), wanted.end(), true);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < reg.size(); ++i)
        if (wanted[i])
            out.push_back(reg[i].id);
    return out;
}

std::vector<ClaimResult> run_claims(const PrimeTable& table, const std::vector<std::string>& ids,
                                    const VerifyConfig& config)
{
    const auto& reg = claim_registry();
    std::vector<const ClaimEntry*> jobs;
    for (const auto& id : ids) {
        auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.id == id; });
        if (it == reg.end())
            throw UnknownClaim("unknown claim id '" + id + "'");
        jobs.push_back(&*it);
    }
    std::vector<ClaimResult> results(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                results[i] = jobs[i]->run(table, config);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned workers = std::max(1u, config.workers);
    if (workers == 1 || jobs.size() < 2) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < std::min<std::size_t>(workers, jobs.size()); ++i)
            pool.emplace_back(work);
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return results;
}

std::uint64_t required_sieve_limit(const VerifyConfig& config)
{
    auto isqrt_up = [](double v) { return static_cast<std::uint64_t>(std::sqrt(v)) + 2; };
    std::uint64_t need = limit_for_prime_count(std::max(config.n_max, kFondaMinIndex) + 1);
    need = std::max(need, isqrt_up(static_cast<double>(config.champion_limit)));
    need = std::max(need, isqrt_up(static_cast<double>(config.sandwich_limit)));
    // N_{k+1} for the reduction ranges; N_16 no longer fits in 64 bits.
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    const std::size_t k = std::min<std::size_t>(config.reduction_max_index + 1, 15);
    double N = 1;
    for (std::size_t i = 0; i < k; ++i)
        N *= static_cast<double>(small[i]);
    need = std::max(need, isqrt_up(N));
    return need;
}

} // namespace dpsi
