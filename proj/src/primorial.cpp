#include "dpsi/primorial.hpp"

#include <string>
#include <type_traits>

namespace dpsi {

template <class T>
void EulerSums<T>::advance()
{
    if (k_ >= table_->size())
        throw RangeError("EulerSums: no prime beyond index " + std::to_string(k_) +
                         " (sieve limit " + std::to_string(table_->limit()) + ")");
    p_ = table_->primes()[k_];
    ++k_;
    const Ball<T> one = Ball<T>::exact(T(1));
    const Ball<T> p = from_uint<T>(p_);
    const Ball<T> inv_p = cv_div(one, p);
    if constexpr (!std::is_same_v<T, double>)
        theta_.add(cv_log(p));
    log_psi_.add(cv_log1p(inv_p));
    log_psi_inv_.add(cv_log1p(cv_neg(cv_div(one, from_uint<T>(p_ + 1)))));
    log_totient_.add(cv_log1p(cv_neg(inv_p)));
    log_zeta_part_.add(cv_log1p(cv_neg(cv_div(one, from_uint<T>(p_ * p_)))));
}

template <class T>
void EulerSums<T>::advance_to(std::size_t k)
{
    if (k > table_->size())
        throw RangeError("EulerSums: index " + std::to_string(k) + " beyond the " +
                         std::to_string(table_->size()) + " sieved primes");
    while (k_ < k)
        advance();
}

template <class T>
Ball<T> EulerSums<T>::theta() const
{
    if (k_ == 0)
        return Ball<T>::exact(T(0));
    if constexpr (std::is_same_v<T, double>)
        return table_->theta_at_index(k_);
    else
        return theta_.result();
}

template <class T>
BasicPrimorialPoint<T> make_point(const EulerSums<T>& sums)
{
    if (sums.index() < 2)
        throw DomainError("make_point: R(N_n) needs n >= 2");
    const auto& c = Constants<T>::get();
    BasicPrimorialPoint<T> pt;
    pt.n = sums.index();
    pt.p_n = sums.prime();
    pt.log_Nn = sums.theta();
    pt.log_log_Nn = cv_log(pt.log_Nn);
    pt.psi_over_n = cv_exp(sums.log_psi());
    pt.R = cv_div(pt.psi_over_n, pt.log_log_Nn);
    pt.g = cv_mul(cv_mul(c.e_gamma_over_zeta2, pt.log_log_Nn), cv_exp(sums.log_psi_inv()));
    pt.f = cv_mul(cv_mul(c.e_gamma, pt.log_log_Nn), cv_exp(sums.log_totient()));
    pt.margin_lower = cv_sub(pt.R, c.e_gamma_over_zeta2);
    pt.margin_upper = cv_sub(c.e_gamma, pt.R);
    return pt;
}

template <class T>
BasicPrimorialStream<T>::BasicPrimorialStream(const PrimeTable& table, std::size_t n_max)
    : sums_(table), n_max_(n_max)
{
    if (n_max > table.size())
        throw RangeError("stream_points: n_max " + std::to_string(n_max) + " exceeds the " +
                         std::to_string(table.size()) + " sieved primes");
    sums_.advance();
}

template <class T>
std::optional<BasicPrimorialPoint<T>> BasicPrimorialStream<T>::next()
{
    if (sums_.index() >= n_max_)
        return std::nullopt;
    sums_.advance();
    return make_point(sums_);
}

template <class T>
BasicPrimorialPoint<T> BasicPrimorialStream<T>::seek(std::size_t n)
{
    if (n < 2 || n > n_max_ || n <= sums_.index())
        throw RangeError("PrimorialStream::seek: index " + std::to_string(n) +
                         " is behind the stream or outside 2.." + std::to_string(n_max_));
    sums_.advance_to(n);
    return make_point(sums_);
}

PrimorialStream stream_points(const PrimeTable& table, std::size_t n_max)
{
    return PrimorialStream(table, n_max);
}

template <class T>
Ball<T> g_from(const EulerSums<T>& sums)
{
    if (sums.index() < 2)
        throw DomainError("g: defined here for x >= 3, where theta(x) > 1");
    const auto& c = Constants<T>::get();
    return cv_mul(cv_mul(c.e_gamma_over_zeta2, cv_log(sums.theta())),
                  cv_exp(sums.log_psi_inv()));
}

template <class T>
Ball<T> f_from(const EulerSums<T>& sums)
{
    if (sums.index() < 2)
        throw DomainError("f: defined here for x >= 3, where theta(x) > 1");
    const auto& c = Constants<T>::get();
    return cv_mul(cv_mul(c.e_gamma, cv_log(sums.theta())), cv_exp(sums.log_totient()));
}

namespace {

EulerSums<double> sums_at(const PrimeTable& table, std::uint64_t x, const char* who)
{
    if (x < 3)
        throw DomainError(std::string(who) + ": x = " + std::to_string(x) +
                          " is below the domain x >= 3 (log theta(x) <= 0)");
    if (x > table.limit())
        throw RangeError(std::string(who) + ": x = " + std::to_string(x) +
                         " exceeds sieve limit " + std::to_string(table.limit()));
    EulerSums<double> s(table);
    s.advance_to(table.prime_count(x));
    return s;
}

} // namespace

CertifiedValue g_of(const PrimeTable& table, std::uint64_t x)
{
    return g_from(sums_at(table, x, "g_of"));
}

CertifiedValue f_of(const PrimeTable& table, std::uint64_t x)
{
    return f_from(sums_at(table, x, "f_of"));
}

template class EulerSums<double>;
template class EulerSums<Quad>;
template class BasicPrimorialStream<double>;
template class BasicPrimorialStream<Quad>;
template BasicPrimorialPoint<double> make_point(const EulerSums<double>&);
template BasicPrimorialPoint<Quad> make_point(const EulerSums<Quad>&);
template Ball<double> g_from(const EulerSums<double>&);
template Ball<Quad> g_from(const EulerSums<Quad>&);
template Ball<double> f_from(const EulerSums<double>&);
template Ball<Quad> f_from(const EulerSums<Quad>&);

} // namespace dpsi
