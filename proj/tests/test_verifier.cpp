#include <doctest.h>

#include "dpsi/arith.hpp"
#include "dpsi/verifier.hpp"
#include "oracle.hpp"

using namespace dpsi;
using oracle::Big;

namespace {

const PrimeTable& table()
{
    static const PrimeTable t = build_table(required_sieve_limit(VerifyConfig{}));
    return t;
}

// Left-to-right maxima of Psi(n)/n by cross-multiplication of the
// brute-force Psi values.
std::vector<std::uint64_t> brute_champions(std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    oracle::Int best_num = 1, best_den = 1;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        const auto num = oracle::psi(n);
        if (num * best_den > best_num * n) {
            out.push_back(n);
            best_num = num;
            best_den = n;
        }
    }
    return out;
}

} // namespace

TEST_SUITE("verifier")
{
    TEST_CASE("champions for small limits")
    {
        CHECK(champions(table(), 5) == std::vector<std::uint64_t>{2});
        CHECK(champions(table(), 6) == std::vector<std::uint64_t>{2, 6});
        CHECK(champions(table(), 1) == std::vector<std::uint64_t>{});
        CHECK(champions(table(), 20000) == brute_champions(20000));
    }

    TEST_CASE("champion scan to 10^6")
    {
        const auto r = champion_scan(table(), 1'000'000);
        CHECK(r.status() == Status::Holds);
        CHECK(r.summary["champions"] ==
              Json::array({2, 6, 30, 210, 2310, 30030, 510510}));
        CHECK(r.counterexamples.empty());
    }

    TEST_CASE("reduction to primorials")
    {
        const auto r3 = reduction_check(table(), 3, 10'000, 1);
        CHECK(r3.status() == Status::Holds);
        CHECK(r3.points_checked == 180);
        CHECK(r3.range_from == 30);
        CHECK(r3.range_to == 209);
        CHECK(r3.summary["mode"] == "exhaustive");

        const auto r5 = reduction_check(table(), 5, 10'000, 1);
        CHECK(r5.status() == Status::Holds);
        CHECK(r5.summary["mode"] == "sampled");
        // both endpoints plus the random sample
        CHECK(r5.points_checked == 10'002);

        const auto again = reduction_check(table(), 5, 10'000, 1);
        CHECK(to_json(again).dump() == to_json(r5).dump());
        CHECK_THROWS_AS(reduction_check(table(), 1, 10, 1), RangeError);
    }

    TEST_CASE("upper bound in three parts")
    {
        const auto parts = verify_upper(table(), 5000);
        REQUIRE(parts.size() == 3);
        CHECK(parts[0].claim_id == "cor-upper-a");
        CHECK(parts[1].claim_id == "cor-upper-b");
        CHECK(parts[2].claim_id == "cor-upper-c");
        for (const auto& p : parts)
            CHECK(p.status() == Status::Holds);
        CHECK(parts[0].points_checked == 180);
        CHECK(parts[0].summary["witnesses_below_31"] == Json::array({3, 4, 5, 6, 8, 10, 12, 18, 30}));
        CHECK(parts[0].summary["sharpness_witness_30"] == true);
        CHECK(parts[1].points_checked == 2259);
        CHECK(parts[1].summary["worst_margin"]["at"] == 4);
    }

    TEST_CASE("small-n witnesses agree with the oracle")
    {
        std::vector<std::uint64_t> w;
        for (std::uint64_t n = 3; n <= 30; ++n)
            if (oracle::ratio_R(n) >= oracle::e_gamma())
                w.push_back(n);
        CHECK(w == std::vector<std::uint64_t>{3, 4, 5, 6, 8, 10, 12, 18, 30});
    }

    TEST_CASE("sub-result (b) agrees with exact primorials")
    {
        for (std::size_t n = 4; n <= 15; ++n) {
            const Big N = Big(primorial(table(), n));
            const auto f = primorial_factorization(table(), n);
            const Big R = Big(psi(f)) / (N * log(log(N)));
            CHECK(R < oracle::e_gamma());
        }
    }

    TEST_CASE("lower bound scan")
    {
        const auto r = verify_lower(table(), 10'000);
        CHECK(r.status() == Status::Holds);
        CHECK(r.points_checked == 9'998);
        CHECK(r.summary["dual_disagreements"].empty());
        CHECK_THROWS_AS(verify_lower(table(), 2), RangeError);
    }

    TEST_CASE("limit trend")
    {
        const auto r = mertens_limit_trend(table(), {10, 100, 1000, 10'000, 100'000});
        CHECK(r.status() == Status::Holds);
    }

    TEST_CASE("sandwich and identity")
    {
        CHECK(sandwich_check(table(), 20'000).status() == Status::Holds);
        CHECK(identity_check(table(), 20'000).status() == Status::Holds);
    }

    TEST_CASE("bound claims")
    {
        for (BoundKind k : all_bounds())
            CHECK(bound_claim(table(), k, 20'000).status() == Status::Holds);
    }

    TEST_CASE("registry and id expansion")
    {
        const auto& reg = claim_registry();
        CHECK(reg.front().id == "prop1-champions");
        CHECK(expand_claim_ids({}).size() == reg.size());
        CHECK(expand_claim_ids({"all"}).size() == reg.size());
        CHECK(expand_claim_ids({"cor-upper"}) ==
              std::vector<std::string>{"cor-upper-a", "cor-upper-b", "cor-upper-c"});
        CHECK_THROWS_AS(expand_claim_ids({"no-such-claim"}), UnknownClaim);
    }

    TEST_CASE("results do not depend on worker count")
    {
        VerifyConfig one;
        one.n_max = 5000;
        one.champion_limit = 50'000;
        one.reduction_samples = 500;
        one.sandwich_limit = 5000;
        VerifyConfig four = one;
        four.workers = 4;
        const auto t = build_table(required_sieve_limit(one));
        const auto a = run_claims(t, expand_claim_ids({}), one);
        const auto b = run_claims(t, expand_claim_ids({}), four);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(to_json(a[i]).dump() == to_json(b[i]).dump());
    }

    TEST_CASE("ClaimResult status follows counterexamples")
    {
        ClaimResult r;
        CHECK(r.status() == Status::Holds);
        r.inconclusive.push_back(7);
        CHECK(r.status() == Status::Inconclusive);
        r.counterexamples.push_back(5);
        CHECK(r.status() == Status::Fails);
    }
}
