#ifndef BFILAB_TOTIENT_SUMS_HPP
#define BFILAB_TOTIENT_SUMS_HPP

#include <cstdint>
#include <vector>

#include "bfilab/constants.hpp"

namespace bfilab {

// One evaluation of a partial/weighted totient sum against its main term.
struct ResidualRow {
  double M = 0.0;
  double lhs = 0.0;
  double main_term = 0.0;
  double residual = 0.0;  // lhs - main_term
};

// The four partial sums over n <= M with (n, a) = 1:
//   kind 1: sum n/phi(n)        main term C1(a) M
//   kind 2: sum 1/phi(n)        main term C1(a) log M + C2(a)
//   kind 3: sum rn/phi(rn)      main term C1(a,r) M
//   kind 4: sum 1/phi(rn)       main term (C1(a,r)/r) log(r'M) + C2(a,r)/r
// Kinds 1 and 2 ignore r. M may be non-integral: terms run over n <= floor(M).
ResidualRow partial_sum(int kind, int64_t a, uint64_t r, double M,
                        const ConstantsEngine& constants);

enum class WeightVariant { kStatement, kProof };

// sum_{n<=M, (n,a)=1} (1/phi(nr)) (1 - n/M) with both circulating main-term
// assemblies for a = +-1:
//   statement: (C1/r) log(r'M) + C3/r + log(r'M)/(2rM) + C5(1)/(rM)
//   proof:     (C1/r) log(rM)  + C2/r + log(M)/(2rM)   + C5(r)/(rM)
// For omega(|a|) >= 1 both coincide:
//   (C1/r) log(r'M) + C3/r + (phi(|a|)/|a|) Lambda(|a|)/(2rM).
// The statement form is the reported default: measured residuals decay like
// M^{-743/538} under it at r = 1, while the proof form's residual tends to
// the constant C1(1,r)/r.
struct WeightedSumResult {
  ResidualRow row;  // the reported (statement) variant
  double lhs = 0.0;
  double main_statement = 0.0;
  double residual_statement = 0.0;
  double main_proof = 0.0;
  double residual_proof = 0.0;
  WeightVariant reported = WeightVariant::kStatement;
};

WeightedSumResult weighted_sum(int64_t a, uint64_t r, double M,
                               const ConstantsEngine& constants);

// Least-squares fit of log|residual| against log M. `slope` is the fitted
// slope negated, i.e. reported as a positive decay exponent.
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rsq = 0.0;
  int points = 0;
};

struct ExponentFitResult {
  ExponentFit fit;
  int excluded_zero_rows = 0;
};

// Rows must be strictly increasing in M and span at least two decades;
// zero residuals are excluded (counted); fewer than 3 usable rows is a
// domain error.
ExponentFitResult fit_error_exponent(const std::vector<ResidualRow>& rows);

}  // namespace bfilab

#endif  // BFILAB_TOTIENT_SUMS_HPP
