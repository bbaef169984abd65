#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli_app.hpp"
#include "dpsi/report_io.hpp"
#include "dpsi/run_config.hpp"

using namespace dpsi;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, std::map<std::string, std::string> env = {})
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err, [&](const char* name) -> const char* {
        auto it = env.find(name);
        return it == env.end() ? nullptr : it->second.c_str();
    });
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const char* name)
{
    auto dir = std::filesystem::temp_directory_path() / "dpsi-tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("compute")
    {
        auto r = run({"compute", "6"});
        CHECK(r.code == 0);
        CHECK(r.out.find("psi=12\n") != std::string::npos);
        CHECK(r.out.find("sigma=12\n") != std::string::npos);
        CHECK(r.out.find("phi=2\n") != std::string::npos);

        r = run({"compute", "1"});
        CHECK(r.code == 0);
        CHECK(r.out.find("psi=1\n") != std::string::npos);
        CHECK(r.out.find("R=undefined (n < 3)") != std::string::npos);

        r = run({"compute", "210", "--format", "json"});
        CHECK(r.code == 0);
        const auto j = Json::parse(r.out);
        CHECK(j["R"]["value"].get<double>() == doctest::Approx(1.636).epsilon(1e-3));
        CHECK(j["psi"] == 576);
    }

    TEST_CASE("compute errors exit 2")
    {
        CHECK(run({"compute", "0"}).code == 2);
        CHECK(run({"compute", "2000000000000"}).code == 2);
        CHECK(run({"compute"}).code == 2);
        CHECK(run({"compute", "1000003", "--sieve-limit", "10"}).code == 2);
    }

    TEST_CASE("scan lower round-trips through CSV")
    {
        const auto r = run({"scan", "lower", "--n-max", "1000"});
        CHECK(r.code == 0);
        std::istringstream in(r.out);
        const auto rows = parse_series_csv(in);
        REQUIRE(rows.size() == 999);
        CHECK(rows.front().n == 2);
        CHECK(rows.back().n == 1000);
        for (const auto& row : rows)
            CHECK(row.verdict == Status::Holds);

        std::ostringstream again;
        write_series_header(again);
        for (const auto& row : rows)
            write_series_row(again, row);
        CHECK(again.str() == r.out);
    }

    TEST_CASE("scan lower below n = 3 is a range error")
    {
        const auto r = run({"scan", "lower", "--n-max", "2"});
        CHECK(r.code == 2);
        CHECK(r.err.find("n starts at 3") != std::string::npos);
    }

    TEST_CASE("scan bounds")
    {
        auto r = run({"scan", "bounds", "--name", "fonda", "--from", "2263", "--to", "10000"});
        CHECK(r.code == 0);
        const auto j = Json::parse(r.out);
        CHECK(j["bound"] == "fonda");
        CHECK(j["verdicts"]["fails"] == 0);
        CHECK(j["range"] == Json::array({2263, 10000}));

        r = run({"scan", "bounds", "--name", "robin", "--from", "3", "--to", "3000"});
        CHECK(r.code == 1);
        CHECK(Json::parse(r.out)["holds_from"] == 2199);

        CHECK(run({"scan", "bounds", "--name", "nope"}).code == 2);
        CHECK(run({"scan", "bounds", "--name", "fonda", "--from", "100", "--to", "3000"}).code == 2);
    }

    TEST_CASE("verify")
    {
        auto r = run({"verify", "prop1-champions", "--limit", "1000000"});
        CHECK(r.code == 0);
        CHECK(r.out.find("[2,6,30,210,2310,30030,510510]") != std::string::npos);

        r = run({"verify", "cor-upper", "--format", "json"});
        CHECK(r.code == 0);
        const auto j = Json::parse(r.out);
        REQUIRE(j["claims"].size() == 3);
        for (const auto& c : j["claims"])
            CHECK(c["status"] == "HOLDS");

        r = run({"verify", "no-such-claim"});
        CHECK(r.code == 2);
        CHECK(r.err.find("prop1-champions") != std::string::npos);
    }

    TEST_CASE("output file")
    {
        const auto dir = scratch("cli-output");
        const auto file = (dir / "series.csv").string();
        const auto r = run({"scan", "lower", "--n-max", "50", "--output", file});
        CHECK(r.code == 0);
        CHECK(r.out.empty());
        std::ifstream in(file);
        CHECK(parse_series_csv(in).size() == 49);
    }

    TEST_CASE("cache subcommands")
    {
        const auto dir = scratch("cli-cache").string();
        auto r = run({"cache", "build", "--limit", "100000", "--cache-dir", dir});
        CHECK(r.code == 0);
        r = run({"cache", "inspect"}, {{"DPSI_CACHE_DIR", dir}});
        CHECK(r.code == 0);
        CHECK(r.out.find("primes=9592") != std::string::npos);
        CHECK(run({"compute", "9973", "--cache-dir", dir}).code == 0);
        r = run({"cache", "clear", "--cache-dir", dir});
        CHECK(r.code == 0);
        CHECK(run({"cache", "inspect", "--cache-dir", dir}).out.find("no cache") != std::string::npos);
        CHECK(run({"cache", "frobnicate"}).code == 2);
    }

    TEST_CASE("usage errors")
    {
        CHECK(run({}).code == 2);
        CHECK(run({"bogus"}).code == 2);
        CHECK(run({"--format", "xml", "compute", "5"}).code == 2);
        CHECK(run({"--help"}).code == 0);
    }
}

TEST_SUITE("config")
{
    TEST_CASE("precedence: flags over environment over file over defaults")
    {
        ConfigLayer file, env, flags;
        file.n_max = 10;
        file.workers = 2;
        file.format = OutputFormat::Csv;
        env.n_max = 20;
        env.workers = 3;
        flags.n_max = 30;
        const auto c = resolve_config(file, env, flags);
        CHECK(c.n_max == 30);
        CHECK(c.workers == 3);
        CHECK(c.format == OutputFormat::Csv);
        CHECK(c.champion_limit == 1'000'000);
    }

    TEST_CASE("environment and file layers parse")
    {
        const auto env = layer_from_env([](const char* n) -> const char* {
            if (std::string(n) == "DPSI_N_MAX")
                return "500";
            if (std::string(n) == "DPSI_ESCALATE")
                return "false";
            return nullptr;
        });
        CHECK(env.n_max == 500u);
        CHECK(env.escalate == false);
        CHECK_THROWS_AS(layer_from_env([](const char* n) -> const char* {
                            return std::string(n) == "DPSI_WORKERS" ? "many" : nullptr;
                        }),
                        ConfigError);
        const auto file = layer_from_json(Json::parse(R"({"n_max": 77, "format": "json"})"));
        CHECK(file.n_max == 77u);
        CHECK(file.format == OutputFormat::Json);
        CHECK_THROWS_AS(layer_from_json(Json::parse(R"({"nmax": 77})")), ConfigError);
        CHECK_THROWS_AS(layer_from_json(Json::parse(R"({"format": "xml"})")), ConfigError);
    }

    TEST_CASE("invalid values are rejected")
    {
        ConfigLayer bad;
        bad.workers = 0;
        CHECK_THROWS_AS(resolve_config({}, {}, bad), ConfigError);
        bad = {};
        bad.stride_ratio = 0.5;
        CHECK_THROWS_AS(resolve_config({}, {}, bad), ConfigError);
        bad = {};
        bad.sieve_limit = 1;
        CHECK_THROWS_AS(resolve_config({}, {}, bad), ConfigError);
    }

    TEST_CASE("config file through the command line")
    {
        const auto dir = scratch("cli-config");
        const auto cfg = (dir / "cfg.json").string();
        std::ofstream(cfg) << R"({"n_max": 40, "format": "json"})";
        auto r = run({"--config", cfg, "scan", "lower"});
        CHECK(r.code == 0);
        CHECK(Json::parse(r.out)["rows"].size() == 39);
        r = run({"scan", "lower"}, {{"DPSI_CONFIG", cfg}, {"DPSI_N_MAX", "30"}});
        CHECK(Json::parse(r.out)["rows"].size() == 29);
        r = run({"scan", "lower", "--n-max", "20", "--format", "csv"},
                {{"DPSI_CONFIG", cfg}, {"DPSI_N_MAX", "30"}});
        std::istringstream in(r.out);
        CHECK(parse_series_csv(in).size() == 19);
    }
}
