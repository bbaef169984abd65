#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "dpsi/arith.hpp"
#include "dpsi/bounds.hpp"
#include "dpsi/prime_cache.hpp"
#include "dpsi/primorial.hpp"
#include "dpsi/report_io.hpp"
#include "dpsi/run_config.hpp"
#include "dpsi/verifier.hpp"

namespace dpsi::cli {

namespace {

struct Flags {
    std::string config_path;
    std::uint64_t sieve_limit = 0;
    std::size_t n_max = 0;
    std::string format;
    std::string output;
    bool no_escalate = false;
    std::string cache_dir;
    unsigned workers = 0;
    std::uint64_t champion_limit = 0;
    std::size_t reduction_samples = 0;
    std::size_t stride_dense_until = 0;
    double stride_ratio = 0;

    // compute
    std::uint64_t number = 0;
    // scan
    std::string bound;
    std::size_t from = 0;
    std::size_t to = 0;
    // verify
    std::vector<std::string> claims;
};

// Output sink: the given stream, or a file when --output is set.
class Sink {
public:
    Sink(std::ostream& fallback, const std::string& path) : out_(&fallback)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw ConfigError("cannot open output file " + path);
            out_ = file_.get();
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
};

std::string big_to_string(const BigInt& v)
{
    return v.str();
}

Json big_to_json(const BigInt& v)
{
    if (v <= std::numeric_limits<std::uint64_t>::max())
        return Json(v.convert_to<std::uint64_t>());
    return Json(v.str());
}

std::uint64_t isqrt_ceil(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r < n)
        ++r;
    return r;
}

PrimeTable obtain_table(const RunConfig& cfg, std::uint64_t needed, std::ostream& err)
{
    std::uint64_t limit = std::max<std::uint64_t>(needed, 2);
    if (cfg.sieve_limit != 0) {
        if (cfg.sieve_limit < needed)
            throw ConfigError("sieve limit " + std::to_string(cfg.sieve_limit) +
                              " is too small for this command (needs " + std::to_string(needed) +
                              ")");
        limit = cfg.sieve_limit;
    }
    if (!cfg.cache_dir.empty())
        return load_or_build(cfg.cache_dir, limit, cfg.sieve_options());
    (void)err;
    return build_table(limit, cfg.sieve_options());
}

int cmd_compute(const RunConfig& cfg, const Flags& fl, std::ostream& out, std::ostream& err)
{
    const std::uint64_t n = fl.number;
    if (n == 0)
        throw DomainError("compute: n must be a positive integer");
    if (n > kDefaultFactorizationLimit)
        throw CapabilityError("compute: n exceeds the factorization limit 10^12");
    const PrimeTable table = obtain_table(cfg, std::max<std::uint64_t>(isqrt_ceil(n) + 1, 100), err);
    const Factorization f = factorize(table, n);
    const BigInt ps = psi(f), ph = phi(f), sg = sigma(f);
    std::optional<CertifiedValue> R;
    if (n >= 3)
        R = ratio_R(f);

    Sink sink(out, cfg.output);
    auto& o = sink.stream();
    if (cfg.format == OutputFormat::Json) {
        Json j;
        j["n"] = n;
        Json fac = Json::array();
        for (const auto& pe : f.factors)
            fac.push_back(Json::array({pe.prime, pe.exponent}));
        j["factorization"] = fac;
        j["psi"] = big_to_json(ps);
        j["phi"] = big_to_json(ph);
        j["sigma"] = big_to_json(sg);
        j["squarefree"] = is_squarefree(f);
        j["R"] = R ? to_json(*R) : Json("undefined (n < 3)");
        if (R) {
            j["R_vs_e_gamma"] =
                status_name(compare(*R, Constants<double>::get().e_gamma, Claim::Less).status);
        }
        o << j.dump(2) << '\n';
    } else {
        std::string fac;
        for (const auto& pe : f.factors) {
            if (!fac.empty())
                fac += " * ";
            fac += std::to_string(pe.prime);
            if (pe.exponent > 1)
                fac += "^" + std::to_string(pe.exponent);
        }
        o << "n=" << n << '\n'
          << "factorization=" << (fac.empty() ? "1" : fac) << '\n'
          << "psi=" << big_to_string(ps) << '\n'
          << "phi=" << big_to_string(ph) << '\n'
          << "sigma=" << big_to_string(sg) << '\n'
          << "squarefree=" << (is_squarefree(f) ? "true" : "false") << '\n';
        if (R)
            o << "R=" << format_double(R->value) << " radius=" << format_double(R->radius) << '\n';
        else
            o << "R=undefined (n < 3)\n";
    }
    return kExitOk;
}

int cmd_scan_lower(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.n_max < 3)
        throw RangeError("scan lower: n starts at 3; --n-max must be at least 3");
    const PrimeTable table = obtain_table(cfg, limit_for_prime_count(cfg.n_max), err);
    PrimorialStream stream(table, cfg.n_max);
    Sink sink(out, cfg.output);
    auto& o = sink.stream();
    bool all_hold = true;
    if (cfg.format == OutputFormat::Json) {
        Json rows = Json::array();
        while (auto pt = stream.next()) {
            Json j = to_json(*pt);
            const SeriesRow row = to_row(*pt);
            j["verdict"] = status_name(row.verdict);
            all_hold = all_hold && row.verdict == Status::Holds;
            rows.push_back(j);
        }
        o << Json{{"series", "lower"}, {"n_max", cfg.n_max}, {"rows", rows}}.dump(2) << '\n';
    } else {
        write_series_header(o);
        while (auto pt = stream.next()) {
            const SeriesRow row = to_row(*pt);
            all_hold = all_hold && row.verdict == Status::Holds;
            write_series_row(o, row);
        }
    }
    return all_hold ? kExitOk : kExitMath;
}

int cmd_scan_bounds(const RunConfig& cfg, const Flags& fl, std::ostream& out, std::ostream& err)
{
    std::vector<BoundKind> kinds;
    if (fl.bound == "all") {
        kinds = all_bounds();
    } else if (auto k = parse_bound_name(fl.bound)) {
        kinds.push_back(*k);
    } else {
        std::string names;
        for (BoundKind k : all_bounds())
            names += std::string(" ") + bound_name(k);
        throw ConfigError("unknown bound '" + fl.bound + "'; known:" + names + " all");
    }
    const std::size_t to = fl.to ? fl.to : std::max(cfg.n_max, kFondaMinIndex);
    const PrimeTable table = obtain_table(cfg, limit_for_prime_count(to + 1), err);
    const ScanOptions opts{cfg.stride, cfg.escalate};
    Json reports = Json::array();
    bool clean = true;
    for (BoundKind k : kinds) {
        const std::size_t from = fl.from ? fl.from : bound_min_index(k);
        const ScanReport rep = scan_bound(table, k, from, to, opts);
        clean = clean && rep.fails == 0 && rep.inconclusive == 0;
        reports.push_back(to_json(rep));
    }
    Sink sink(out, cfg.output);
    auto& o = sink.stream();
    if (cfg.format == OutputFormat::Table) {
        for (const auto& r : reports) {
            o << std::left << std::setw(12) << r["bound"].get<std::string>() << " n="
              << r["range"][0] << ".." << r["range"][1] << " points=" << r["points_checked"]
              << " holds=" << r["verdicts"]["holds"] << " inconclusive="
              << r["verdicts"]["inconclusive"] << " fails=" << r["verdicts"]["fails"]
              << " worst_margin=" << r["worst_margin"] << " at n=" << r["worst_at"] << '\n';
        }
    } else {
        o << (reports.size() == 1 ? reports[0] : reports).dump(2) << '\n';
    }
    return clean ? kExitOk : kExitMath;
}

int cmd_verify(const RunConfig& cfg, const Flags& fl, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> ids;
    try {
        ids = expand_claim_ids(fl.claims);
    } catch (const UnknownClaim& e) {
        err << "error: " << e.what() << "\nknown claims:\n";
        for (const auto& c : claim_registry())
            err << "  " << std::left << std::setw(22) << c.id << c.statement << '\n';
        err << "  " << std::left << std::setw(22) << "cor-upper" << "cor-upper-a, -b and -c\n";
        err << "  " << std::left << std::setw(22) << "bounds" << "every bound scan\n";
        err << "  " << std::left << std::setw(22) << "all" << "everything (default)\n";
        return kExitUsage;
    }
    const VerifyConfig vc = cfg.verify_config();
    const PrimeTable table = obtain_table(cfg, required_sieve_limit(vc), err);
    const auto results = run_claims(table, ids, vc);

    bool all_hold = true;
    Json claims = Json::array();
    for (const auto& r : results) {
        all_hold = all_hold && r.status() == Status::Holds;
        claims.push_back(to_json(r));
    }
    Sink sink(out, cfg.output);
    auto& o = sink.stream();
    if (cfg.format == OutputFormat::Json) {
        Json j;
        j["config"] = Json{{"n_max", vc.n_max},
                           {"champion_limit", vc.champion_limit},
                           {"reduction_samples", vc.reduction_samples},
                           {"sandwich_limit", vc.sandwich_limit},
                           {"seed", vc.seed},
                           {"escalate", vc.escalate}};
        j["claims"] = claims;
        j["all_hold"] = all_hold;
        o << j.dump(2) << '\n';
    } else {
        o << std::left << std::setw(22) << "claim" << std::setw(14) << "verdict" << std::setw(12)
          << "points" << "range\n";
        for (const auto& r : results) {
            o << std::left << std::setw(22) << r.claim_id << std::setw(14)
              << status_name(r.status()) << std::setw(12) << r.points_checked << r.range_from
              << ".." << r.range_to << '\n';
            if (r.claim_id == "prop1-champions")
                o << "    champions: " << r.summary["champions"].dump() << '\n';
            if (!r.counterexamples.empty())
                o << "    counterexamples: " << Json(r.counterexamples).dump() << '\n';
        }
        o << (all_hold ? "all claims HOLD\n" : "some claims do not HOLD\n");
    }
    return all_hold ? kExitOk : kExitMath;
}

int cmd_cache(const RunConfig& cfg, const std::string& action, std::ostream& out,
              std::ostream& err)
{
    const std::filesystem::path dir = cfg.cache_dir.empty() ? ".dpsi-cache" : cfg.cache_dir;
    const auto file = cache_file(dir);
    if (action == "build") {
        const std::uint64_t limit =
            cfg.sieve_limit ? cfg.sieve_limit : required_sieve_limit(cfg.verify_config());
        RunConfig c = cfg;
        c.cache_dir = dir.string();
        const PrimeTable t = obtain_table(c, limit, err);
        out << "cache " << file.string() << ": limit " << t.limit() << ", " << t.size()
            << " primes\n";
    } else if (action == "inspect") {
        const auto info = inspect_cache(file);
        if (!info) {
            out << "no cache at " << file.string() << '\n';
            return kExitOk;
        }
        out << "file=" << file.string() << '\n'
            << "version=" << info->version << (info->version == kCacheVersion ? "" : " (stale)")
            << '\n'
            << "limit=" << info->limit << '\n'
            << "primes=" << info->count << '\n'
            << "bytes=" << info->file_size << '\n';
    } else {
        std::error_code ec;
        const bool removed = std::filesystem::remove(file, ec);
        out << (removed ? "removed " : "nothing to remove at ") << file.string() << '\n';
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env)
{
    CLI::App app{"Dedekind Psi ratios, primorial criteria and certified verifications", "dpsi"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags fl;

    app.add_option("--config", fl.config_path, "JSON config file (or DPSI_CONFIG)");
    auto* o_sieve = app.add_option("--sieve-limit", fl.sieve_limit, "prime sieve limit");
    auto* o_cache = app.add_option("--cache-dir", fl.cache_dir, "prime table cache directory");
    auto* o_workers = app.add_option("--workers", fl.workers, "worker threads")->check(CLI::PositiveNumber);
    auto* o_noesc = app.add_flag("--no-escalate", fl.no_escalate,
                                 "do not retry INCONCLUSIVE verdicts in extended precision");
    auto* o_format = app.add_option("--format", fl.format, "csv | json | table");
    auto* o_output = app.add_option("--output,-o", fl.output, "write to a file instead of stdout");

    auto* compute = app.add_subcommand("compute", "Psi, phi, sigma and R for one integer");
    compute->add_option("n", fl.number, "positive integer <= 10^12")->required();

    auto* scan = app.add_subcommand("scan", "primorial series and bound scans");
    scan->require_subcommand(1);
    scan->fallthrough();
    auto* lower = scan->add_subcommand("lower", "CSV of the primorial series, n = 2..n-max");
    auto* o_nmax_lower = lower->add_option("--n-max", fl.n_max, "last primorial index");
    auto* bounds = scan->add_subcommand("bounds", "scan one analytic bound (or all)");
    bounds->add_option("--name", fl.bound, "rs | zeta-tail | fonda | robin | corollary | proof-ineq | all")
        ->required();
    bounds->add_option("--from", fl.from, "first index (default: validity start)");
    bounds->add_option("--to", fl.to, "last index (default: n-max)");
    auto* o_nmax_bounds = bounds->add_option("--n-max", fl.n_max, "default for --to");
    auto* o_dense = bounds->add_option("--stride-dense-until", fl.stride_dense_until,
                                       "check every index up to here");
    auto* o_ratio = bounds->add_option("--stride-ratio", fl.stride_ratio,
                                       "geometric stride above the dense range (1 = every index)");

    auto* verify = app.add_subcommand("verify", "run registered claims (default: all)");
    verify->add_option("claims", fl.claims, "claim ids");
    auto* o_nmax_verify = verify->add_option("--n-max", fl.n_max, "primorial scan depth");
    auto* o_limit = verify->add_option("--limit", fl.champion_limit, "champion scan limit");
    auto* o_samples = verify->add_option("--samples", fl.reduction_samples,
                                         "random samples per reduction range");

    auto* cache = app.add_subcommand("cache", "manage the prime table cache");
    std::string cache_action;
    cache->add_option("action", cache_action, "build | inspect | clear")
        ->required()
        ->check(CLI::IsMember({"build", "inspect", "clear"}));
    auto* o_cache_limit = cache->add_option("--limit", fl.sieve_limit, "sieve limit to build");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        ConfigLayer flags;
        if (o_sieve->count() || o_cache_limit->count())
            flags.sieve_limit = fl.sieve_limit;
        if (o_nmax_lower->count() || o_nmax_bounds->count() || o_nmax_verify->count())
            flags.n_max = fl.n_max;
        if (o_format->count())
            flags.format = parse_format(fl.format);
        if (o_output->count())
            flags.output = fl.output;
        if (o_noesc->count())
            flags.escalate = false;
        if (o_cache->count())
            flags.cache_dir = fl.cache_dir;
        if (o_workers->count())
            flags.workers = fl.workers;
        if (o_limit->count())
            flags.champion_limit = fl.champion_limit;
        if (o_samples->count())
            flags.reduction_samples = fl.reduction_samples;
        if (o_dense->count())
            flags.stride_dense_until = fl.stride_dense_until;
        if (o_ratio->count())
            flags.stride_ratio = fl.stride_ratio;

        std::string config_path = fl.config_path;
        if (config_path.empty())
            if (const char* p = env("DPSI_CONFIG"); p && *p)
                config_path = p;
        const ConfigLayer file = config_path.empty() ? ConfigLayer{} : layer_from_file(config_path);
        RunConfig cfg = resolve_config(file, layer_from_env(env), flags);

        if (*compute)
            return cmd_compute(cfg, fl, out, err);
        if (*lower) {
            if (!flags.format && cfg.format == OutputFormat::Table)
                cfg.format = OutputFormat::Csv;
            return cmd_scan_lower(cfg, out, err);
        }
        if (*bounds) {
            if (!flags.format && cfg.format == OutputFormat::Table)
                cfg.format = OutputFormat::Json;
            return cmd_scan_bounds(cfg, fl, out, err);
        }
        if (*verify)
            return cmd_verify(cfg, fl, out, err);
        if (*cache)
            return cmd_cache(cfg, cache_action, out, err);
    } catch (const std::exception& e) {
        // Domain, range, capability, resource and configuration errors.
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace dpsi::cli
