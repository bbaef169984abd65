#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "dpsi/certified.hpp"
#include "dpsi/extended.hpp"
#include "dpsi/prime_table.hpp"

namespace dpsi {

// Running logarithmic sums over the first k primes. Products of many
// near-unity factors are only ever formed as exp of one of these.
//
//   theta          sum log p                  (= log N_k)
//   log_psi        sum log(1 + 1/p)           (= log Psi(N_k)/N_k)
//   log_psi_inv    sum log(1 - 1/(p+1))       (= -log_psi, separate terms)
//   log_totient    sum log(1 - 1/p)           (= log phi(N_k)/N_k)
//   log_zeta_part  sum log(1 - 1/p^2)
//
// In double precision theta comes from the table's certified prefix; in
// extended precision it is accumulated here.
template <class T>
class EulerSums {
public:
    explicit EulerSums(const PrimeTable& table) : table_(&table) {}

    std::size_t index() const { return k_; }
    std::uint64_t prime() const { return p_; }

    // Include the next prime. RangeError past the end of the table.
    void advance();
    // Move forward to index k (never backwards).
    void advance_to(std::size_t k);

    Ball<T> theta() const;
    Ball<T> log_psi() const { return log_psi_.result(); }
    Ball<T> log_psi_inv() const { return log_psi_inv_.result(); }
    Ball<T> log_totient() const { return log_totient_.result(); }
    Ball<T> log_zeta_part() const { return log_zeta_part_.result(); }

private:
    const PrimeTable* table_;
    std::size_t k_ = 0;
    std::uint64_t p_ = 0;
    CompensatedSum<T> theta_;
    CompensatedSum<T> log_psi_;
    CompensatedSum<T> log_psi_inv_;
    CompensatedSum<T> log_totient_;
    CompensatedSum<T> log_zeta_part_;
};

template <class T>
struct BasicPrimorialPoint {
    std::size_t n = 0;
    std::uint64_t p_n = 0;
    Ball<T> log_Nn;      // theta(p_n)
    Ball<T> log_log_Nn;  // log theta(p_n)
    Ball<T> psi_over_n;  // Psi(N_n)/N_n
    Ball<T> R;           // R(N_n)
    Ball<T> g;           // g(p_n)
    Ball<T> f;           // f(p_n)
    Ball<T> margin_lower; // R - e^gamma/zeta(2)
    Ball<T> margin_upper; // e^gamma - R
};

using PrimorialPoint = BasicPrimorialPoint<double>;
using ExtendedPrimorialPoint = BasicPrimorialPoint<Quad>;

// Point data from sums positioned at index n >= 2. R comes from log_psi,
// g from the independent log_psi_inv route.
template <class T>
BasicPrimorialPoint<T> make_point(const EulerSums<T>& sums);

// Sequential stream of PrimorialPoint for n = 2, 3, ..., n_max with O(1)
// work per step.
template <class T>
class BasicPrimorialStream {
public:
    BasicPrimorialStream(const PrimeTable& table, std::size_t n_max);

    std::optional<BasicPrimorialPoint<T>> next();
    // Point at index n >= current position; skips intermediate points.
    BasicPrimorialPoint<T> seek(std::size_t n);

    std::size_t n_max() const { return n_max_; }

private:
    EulerSums<T> sums_;
    std::size_t n_max_;
};

using PrimorialStream = BasicPrimorialStream<double>;
using ExtendedPrimorialStream = BasicPrimorialStream<Quad>;

PrimorialStream stream_points(const PrimeTable& table, std::size_t n_max);

// Criterion functions at integer x >= 3 (theta(x) > 1 from x = 3 on):
//   g(x) = e^gamma/zeta(2) * log theta(x) * prod_{p<=x} (1+1/p)^-1
//   f(x) = e^gamma * log theta(x) * prod_{p<=x} (1-1/p)
CertifiedValue g_of(const PrimeTable& table, std::uint64_t x);
CertifiedValue f_of(const PrimeTable& table, std::uint64_t x);

// Same as g_of/f_of from sums positioned at pi(x).
template <class T>
Ball<T> g_from(const EulerSums<T>& sums);
template <class T>
Ball<T> f_from(const EulerSums<T>& sums);

extern template class EulerSums<double>;
extern template class EulerSums<Quad>;
extern template class BasicPrimorialStream<double>;
extern template class BasicPrimorialStream<Quad>;

} // namespace dpsi
