#ifndef BFILAB_TITCHMARSH_HPP
#define BFILAB_TITCHMARSH_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "bfilab/constants.hpp"
#include "bfilab/sieve.hpp"

namespace bfilab {

// tau(n) = number of divisors, for n in [0, limit], by a linear sieve.
std::vector<uint32_t> tau_table(uint64_t limit);

struct TitchmarshRow {
  uint64_t x = 0;
  uint64_t q = 1;
  int64_t a = 0;
  double sum = 0.0;
  double main_term = 0.0;
  double error = 0.0;  // sum - main_term
};

// sum_{|a|/q < m <= x/q} Lambda(q m + a) tau(m). The prime table must cover
// q*floor(x/q) + a (at most x + a for positive a). `tau` must cover
// m <= floor(x/q).
double titchmarsh_sum(const PrimeTable& pt, uint64_t x, uint64_t q, int64_t a,
                      const std::vector<uint32_t>& tau, int threads = 0);

// Convenience overload building its own tau table.
double titchmarsh_sum(const PrimeTable& pt, uint64_t x, uint64_t q, int64_t a,
                      int threads = 0);

// (x/q) ( C1(a,q) log x + 2 C2(a,q) + C1(a,q) log(q'^2/(e q)) ) where q' is
// the radical of q; the constants depend on q only through q'.
double titchmarsh_main_term(const ConstantsEngine& constants, uint64_t x,
                            uint64_t q, int64_t a);

TitchmarshRow titchmarsh_row(const PrimeTable& pt,
                             const ConstantsEngine& constants, uint64_t x,
                             uint64_t q, int64_t a,
                             const std::vector<uint32_t>& tau,
                             int threads = 0);

struct BvTitchmarshTable {
  std::vector<TitchmarshRow> rows;
  double aggregate = 0.0;  // sum of |error| over rows
  uint64_t skipped = 0;    // q with gcd(q, |a|) > 1
  std::array<double, 3> x_over_logA{};  // x/(log x)^A, A = 1, 2, 3
};

// Rows for q = 1..q_max with (q, |a|) = 1. q_max <= x^(1/10) unless
// override_guard. use_global_tau switches between one tau table for all q
// and a fresh table per q; both paths agree.
BvTitchmarshTable bv_titchmarsh_table(const PrimeTable& pt,
                                      const ConstantsEngine& constants,
                                      uint64_t x, uint64_t q_max, int64_t a,
                                      bool use_global_tau = true,
                                      bool override_guard = false,
                                      int threads = 0);

}  // namespace bfilab

#endif  // BFILAB_TITCHMARSH_HPP
