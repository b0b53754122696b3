#ifndef BFILAB_PROGRESSIONS_HPP
#define BFILAB_PROGRESSIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bfilab/accumulate.hpp"
#include "bfilab/sieve.hpp"

namespace bfilab {

// Summation range for progression tallies. kFromOne is the textbook
// psi(x; q, a) over 1 <= n <= x; kAboveAbsA restricts to |a| < n <= x, which
// drops the forced n = a term entering every modulus when a is a positive
// prime power (the deviation sums always use this convention).
enum class RangeConvention { kFromOne, kAboveAbsA };

struct ProgressionTally {
  uint64_t x = 0;
  uint64_t q = 1;
  int64_t a = 0;
  double psi = 0.0;
  double theta = 0.0;
  uint64_t prime_count = 0;
  RangeConvention range = RangeConvention::kFromOne;
  // Exact accumulator values; sums of these across disjoint classes are
  // exact, so merges are order-independent (see accumulate.hpp).
  quad psi_exact = 0;
  quad theta_exact = 0;
};

// Chebyshev tallies over n = a (mod q) up to x. Requires x >= 2, q >= 1 and
// pt.limit() >= x.
ProgressionTally psi_progression(const PrimeTable& pt, uint64_t x, uint64_t q,
                                 int64_t a,
                                 RangeConvention range = RangeConvention::kFromOne);

enum class DeltaMethod { kStepping, kDivisorTransform };

std::string delta_method_name(DeltaMethod m);

// sum_{q <= q_max, (q,|a|)=1} ( sum_{|a| < n <= x, n = a (qr)} Lambda(n)
//                               - x/phi(qr) ).
// The n = |a| term excluded by the range realizes the Lambda(|a|)
// subtraction applied once per modulus. kStepping walks each progression;
// kDivisorTransform computes sum_n Lambda(n) * #{q | (n-a)/r, q <= q_max,
// (q,|a|)=1} over n = a (mod r) and subtracts the same phi corrections.
// Requires gcd(r, |a|) = 1 and q_max * r <= x.
double delta_sum(const PrimeTable& pt, uint64_t x, uint64_t r, uint64_t q_max,
                 int64_t a, DeltaMethod method = DeltaMethod::kStepping,
                 int threads = 0);

struct SwitchPair {
  uint64_t p = 0;
  uint64_t cofactor = 0;  // q on the lhs, s on the rhs
  friend bool operator==(const SwitchPair&, const SwitchPair&) = default;
};

struct SwitchUnmatched {
  uint64_t p = 0;
  uint64_t cofactor = 0;
  char side = 'L';  // the side the pair appears on
  std::vector<std::string> violations;  // constraints its image fails
};

// Exact bookkeeping for the divisor switch p = a + q r s:
//   lhs: sum over x/(rP) < q <= x/r, (q,a)=1 of log p over primes
//        |a| < p <= x, p = a (mod qr)
//   rhs: sum over 1 <= s < P - aP/x, (s,a)=1 of log p over primes
//        sx/P + a <= p <= x, p = a (mod sr)
// diff = rhs - lhs must stay within 4 log^2 x; each unmatched pair fails at
// least one constraint on the other side, recorded in `violations`.
struct SwitchReport {
  uint64_t x = 0;
  uint64_t r = 1;
  double P = 2.0;
  int64_t a = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  double diff = 0.0;
  std::vector<SwitchPair> lhs_pairs;
  std::vector<SwitchPair> rhs_pairs;
  std::vector<SwitchUnmatched> unmatched;
};

// Requires P >= 2, r >= 1, gcd(r, |a|) = 1, pt.limit() >= x.
SwitchReport divisor_switch_check(const PrimeTable& pt, uint64_t x, uint64_t r,
                                  double P, int64_t a);

}  // namespace bfilab

#endif  // BFILAB_PROGRESSIONS_HPP
