#include <doctest.h>

#include <random>

#include "dpsi/certified.hpp"
#include "dpsi/extended.hpp"
#include "oracle.hpp"

using namespace dpsi;
using oracle::Big;

namespace {

CertifiedValue cv(double v, double r = 0) { return CertifiedValue{v, r}; }

} // namespace

TEST_SUITE("certified")
{
    TEST_CASE("addition of exact small integers")
    {
        const auto s = cv_add(cv(1.0), cv(2.0));
        CHECK(s.value == 3.0);
        CHECK(s.radius <= 2 * ulp(3.0));
        CHECK(oracle::contains(s, Big(3)));
    }

    TEST_CASE("log of one is zero within two ulp")
    {
        const auto l = cv_log(cv(1.0));
        CHECK(l.value == 0.0);
        CHECK(l.radius <= 2 * ulp(1.0));
    }

    TEST_CASE("compare verdicts")
    {
        CHECK(compare(cv(1.0, 0.1), cv(2.0, 0.1), Claim::Less).status == Status::Holds);
        CHECK(compare(cv(1.0, 0.6), cv(2.0, 0.6), Claim::Less).status == Status::Inconclusive);
        const auto& k = Constants<double>::get();
        CHECK(compare(k.e_gamma, k.zeta2, Claim::Less).status == Status::Fails);
        CHECK(compare(k.e_gamma, k.zeta2, Claim::Greater).status == Status::Holds);
    }

    TEST_CASE("strict and non-strict claims at equality")
    {
        CHECK(compare(cv(1.0), cv(1.0), Claim::LessEqual).status == Status::Holds);
        CHECK(compare(cv(1.0), cv(1.0), Claim::Less).status == Status::Fails);
        CHECK(compare(cv(1.0, 1e-9), cv(1.0), Claim::LessEqual).status == Status::Inconclusive);
    }

    TEST_CASE("compare is antisymmetric")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> val(-2, 2), rad(0, 0.3);
        for (int i = 0; i < 2000; ++i) {
            const auto a = cv(val(rng), rad(rng));
            const auto b = cv(val(rng), rad(rng));
            const auto lt = compare(a, b, Claim::Less).status;
            const auto gt = compare(b, a, Claim::Greater).status;
            CHECK(lt == gt);
            if (lt == Status::Holds)
                CHECK(compare(b, a, Claim::Less).status == Status::Fails);
        }
    }

    TEST_CASE("constants enclose the 100-digit values")
    {
        const auto& k = Constants<double>::get();
        CHECK(oracle::contains(k.euler_gamma, boost::math::constants::euler<Big>()));
        CHECK(oracle::contains(k.e_gamma, oracle::e_gamma()));
        CHECK(oracle::contains(k.zeta2, oracle::zeta2()));
        CHECK(oracle::contains(k.e_gamma_over_zeta2, oracle::c_lower()));
        const auto& q = Constants<Quad>::get();
        CHECK(Big(q.e_gamma.lower()) <= oracle::e_gamma());
        CHECK(oracle::e_gamma() <= Big(q.e_gamma.upper()));
        CHECK(q.e_gamma.radius < 1e-32);
    }

    TEST_CASE("domain errors name the operation")
    {
        CHECK_THROWS_WITH_AS(cv_log(cv(-1.0)), doctest::Contains("cv_log"), DomainError);
        CHECK_THROWS_WITH_AS(cv_log(cv(0.5, 0.6)), doctest::Contains("cv_log"), DomainError);
        CHECK_THROWS_WITH_AS(cv_div(cv(1.0), cv(0.0, 0.1)), doctest::Contains("cv_div"),
                             DomainError);
        CHECK_THROWS_WITH_AS(cv_log1p(cv(-1.0)), doctest::Contains("cv_log1p"), DomainError);
        CHECK_THROWS_AS(cv_exp(cv(1000.0)), DomainError);
    }

    TEST_CASE("radius grows monotonically with input radius")
    {
        const auto x = cv(1.5, 1e-12);
        const auto y = cv(1.5, 1e-9);
        CHECK(cv_log(x).radius <= cv_log(y).radius);
        CHECK(cv_exp(x).radius <= cv_exp(y).radius);
        CHECK(cv_mul(x, x).radius <= cv_mul(y, y).radius);
        CHECK(cv_div(cv(1.0), x).radius <= cv_div(cv(1.0), y).radius);
    }

    TEST_CASE("from_uint is exact below 2^53 and enclosing above")
    {
        CHECK(from_uint<double>(12345).radius == 0);
        const std::uint64_t big = (std::uint64_t{1} << 60) + 1;
        const auto b = from_uint<double>(big);
        CHECK(b.radius > 0);
        CHECK(oracle::contains(b, Big(big)));
    }

    TEST_CASE("compensated sum of many small logs")
    {
        CompensatedSum<double> s;
        Big exact = 0;
        for (int p = 2; p < 20000; ++p) {
            s.add(cv_log1p(cv(1.0 / p)));
            exact += log1p(Big(1.0 / p));
        }
        CHECK(oracle::contains(s.result(), exact));
        CHECK(s.result().radius < 1e-10);
    }

    TEST_CASE("extended precision operations enclose the 100-digit result")
    {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> u(0.01, 50);
        for (int i = 0; i < 500; ++i) {
            const Quad a = Quad(u(rng)) / 7, b = Quad(u(rng)) / 3;
            const ExtendedValue A{a, 0}, B{b, 0};
            auto check = [](const ExtendedValue& r, const Big& exact) {
                CHECK(Big(r.lower()) <= exact);
                CHECK(exact <= Big(r.upper()));
            };
            check(cv_mul(A, B), Big(a) * Big(b));
            check(cv_div(A, B), Big(a) / Big(b));
            check(cv_add(A, B), Big(a) + Big(b));
            check(cv_log(A), log(Big(a)));
            check(cv_log1p(B), log1p(Big(b)));
            check(cv_exp(cv_div(A, ExtendedValue{Quad(10), 0})), exp(Big(a) / 10));
        }
    }

    TEST_CASE("narrowing keeps the enclosure")
    {
        const ExtendedValue x = cv_log(ExtendedValue{Quad(3), 0});
        const CertifiedValue d = narrow(x);
        CHECK(oracle::contains(d, log(Big(3))));
    }
}
