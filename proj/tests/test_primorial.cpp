#include <doctest.h>

#include "dpsi/arith.hpp"
#include "dpsi/primorial.hpp"
#include "oracle.hpp"

using namespace dpsi;
using oracle::Big;

namespace {

const PrimeTable& table()
{
    static const PrimeTable t = build_table(limit_for_prime_count(100'001));
    return t;
}

// 100-digit primorial quantities straight from the definitions.
struct Exact {
    Big log_Nn, psi_over_n, R, g, f;
};

Exact exact_at(std::size_t n)
{
    Big theta = 0, prod_plus = 1, prod_minus = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        const Big p = table().nth_prime(k);
        theta += log(p);
        prod_plus *= 1 + 1 / p;
        prod_minus *= 1 - 1 / p;
    }
    const Big ll = log(theta);
    return {theta, prod_plus, prod_plus / ll, oracle::c_lower() * ll / prod_plus,
            oracle::e_gamma() * ll * prod_minus};
}

} // namespace

TEST_SUITE("primorial")
{
    TEST_CASE("first point: N_2 = 6")
    {
        auto s = stream_points(table(), 10);
        const auto pt = s.next();
        REQUIRE(pt);
        CHECK(pt->n == 2);
        CHECK(pt->p_n == 3);
        CHECK(oracle::contains(pt->psi_over_n, Big(2)));
        CHECK(pt->R.value == doctest::Approx(3.42936656670059).epsilon(1e-12));
        CHECK(oracle::contains(pt->log_Nn, log(Big(6))));
    }

    TEST_CASE("stream agrees with exact primorials for n <= 15")
    {
        auto s = stream_points(table(), 15);
        while (auto pt = s.next()) {
            const auto f = primorial_factorization(table(), pt->n);
            const auto direct = ratio_R(f);
            CHECK(overlaps(pt->R, direct));
            const Big N = Big(primorial(table(), pt->n));
            CHECK(oracle::contains(pt->R, Big(psi(f)) / (N * log(log(N)))));
        }
        CHECK(stream_points(table(), 15).seek(4).R.value == doctest::Approx(ratio_R(table(), 210).value).epsilon(1e-14));
    }

    TEST_CASE("points enclose the 100-digit definitions")
    {
        for (std::size_t n : {3u, 10u, 100u, 1000u, 2263u}) {
            auto s = stream_points(table(), n);
            const auto pt = s.seek(n);
            const auto e = exact_at(n);
            CHECK(oracle::contains(pt.log_Nn, e.log_Nn));
            CHECK(oracle::contains(pt.psi_over_n, e.psi_over_n));
            CHECK(oracle::contains(pt.R, e.R));
            CHECK(oracle::contains(pt.g, e.g));
            CHECK(oracle::contains(pt.f, e.f));
            CHECK(oracle::contains(pt.margin_lower, e.R - oracle::c_lower()));
            CHECK(oracle::contains(pt.margin_upper, oracle::e_gamma() - e.R));
        }
    }

    TEST_CASE("g times R encloses e^gamma/zeta(2)")
    {
        const auto& c = Constants<double>::get().e_gamma_over_zeta2;
        auto s = stream_points(table(), 100'000);
        std::size_t checked = 0;
        while (auto pt = s.next()) {
            CHECK(overlaps(cv_mul(pt->g, pt->R), c));
            ++checked;
        }
        CHECK(checked == 99'999);
        for (std::size_t n : {3u, 10u, 100u}) {
            const auto pt = stream_points(table(), n).seek(n);
            CHECK(overlaps(cv_mul(pt.g, pt.R), c));
        }
    }

    TEST_CASE("psi_over_n strictly increases and R tends to e^gamma/zeta(2)")
    {
        auto s = stream_points(table(), 100'000);
        auto prev = s.next();
        while (auto pt = s.next()) {
            CHECK(pt->psi_over_n.lower() > prev->psi_over_n.upper());
            prev = pt;
        }
        CHECK(prev->R.value == doctest::Approx(1.0829).epsilon(1e-4));
        CHECK(prev->margin_lower.value == doctest::Approx(1.378e-4).epsilon(1e-2));
    }

    TEST_CASE("criterion functions at sample points")
    {
        const auto g5 = g_of(table(), 5);
        CHECK(g5.upper() < 1);
        CHECK(g5.value == doctest::Approx(0.55227).epsilon(1e-4));
        const auto g4 = g_of(table(), 10'000);
        CHECK(g4.lower() > 0);
        CHECK(g4.upper() < 1);
        CHECK(g4.value == doctest::Approx(0.997626).epsilon(1e-5));
        for (std::uint64_t x : {5u, 100u, 10'000u})
            CHECK(f_of(table(), x).upper() < 1);
        CHECK(f_of(table(), 5).value == doctest::Approx(0.5814).epsilon(1e-3));
        CHECK(f_of(table(), 10'000).value == doctest::Approx(0.997636).epsilon(1e-5));
        // g and f are step functions of x
        CHECK(g_of(table(), 6).value == g_of(table(), 5).value);
    }

    TEST_CASE("proof inequality log g >= log f - 2/x at sample points")
    {
        for (std::uint64_t x : {std::uint64_t{5}, std::uint64_t{100}, std::uint64_t{10'000}, table().nth_prime(2263)}) {
            const auto lg = cv_log(g_of(table(), x));
            const auto rhs = cv_sub(cv_log(f_of(table(), x)), CertifiedValue{2.0 / x, ulp(2.0 / x)});
            CHECK(compare(lg, rhs, Claim::GreaterEqual).status == Status::Holds);
        }
    }

    TEST_CASE("domain and range errors")
    {
        CHECK_THROWS_AS(g_of(table(), 2), DomainError);
        CHECK_THROWS_AS(f_of(table(), 2), DomainError);
        CHECK_NOTHROW(g_of(table(), 3));
        CHECK_THROWS_AS(g_of(table(), table().limit() + 1), RangeError);
        CHECK_THROWS_AS(stream_points(table(), table().size() + 1), RangeError);
    }

    TEST_CASE("extended stream encloses and tightens the double stream")
    {
        ExtendedPrimorialStream xs(table(), 1000);
        const auto xp = xs.seek(1000);
        const auto dp = stream_points(table(), 1000).seek(1000);
        const auto e = exact_at(1000);
        CHECK(Big(xp.R.lower()) <= e.R);
        CHECK(e.R <= Big(xp.R.upper()));
        CHECK(xp.R.radius < Quad(dp.R.radius) / 10);
        CHECK(overlaps(narrow(xp.R), dp.R));
    }
}
