#ifndef BFILAB_EXPERIMENTS_HPP
#define BFILAB_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bfilab/constants.hpp"
#include "bfilab/progressions.hpp"
#include "bfilab/totient_sums.hpp"

namespace bfilab {

enum class ExperimentMode { kDyadic, kFull };

std::string experiment_mode_name(ExperimentMode mode);

// Parameter bundle for the deviation experiments. Dyadic mode sums moduli
// r in (R/2, R] with per-r budget q <= x/(rM); full mode sums r <= R with
// the uniform budget q <= x/(RM).
struct ExperimentConfig {
  uint64_t x = 0;
  double R = 1.0;
  double M = 1.0;
  int64_t a = 1;
  ExperimentMode mode = ExperimentMode::kDyadic;
  double lambda_guard = 0.1;
  bool override_lambda_guard = false;

  // Throws std::domain_error on invalid parameters; returns a warning
  // string when the R <= x^lambda_guard bound is overridden, else "".
  std::string validate() const;
};

// The secondary "average" mu(a, r, M):
//   -log(M)/2 - C5(r)   when |a| = 1
//   -log(p)/2           when |a| = p^e
//   0                   otherwise.
double mu_average(int64_t a, uint64_t r, double M,
                  const ConstantsEngine& constants);

// Leading value of nu(a, M) with the finite-R multipliers, plus the width
// of the unestimated bracket (log(RM)/R when |a| = 1, 1/R when |a| = p^e,
// 0 otherwise).
struct NuAverage {
  double leading = 0.0;
  double bracket = 0.0;
};

NuAverage nu_average(int64_t a, double M, double R,
                     const ConstantsEngine& constants);

struct DeviationRow {
  uint64_t r = 1;
  double inner = 0.0;       // q-sum of deviations (delta_sum)
  double prediction = 0.0;  // (phi(|a|)/|a|) * budget * mu
  double abs_dev = 0.0;     // |inner - prediction|
};

struct DeviationTable {
  std::vector<DeviationRow> rows;
  double aggregate = 0.0;                // sum of abs_dev over rows
  double ref_m_decay = 0.0;              // x / M^(743/538)
  std::array<double, 3> x_over_logA{};   // x/(log x)^A, A = 1, 2, 3
};

DeviationTable deviation_table(const PrimeTable& pt,
                               const ExperimentConfig& cfg,
                               const ConstantsEngine& constants,
                               int threads = 0);

// Absolute-deviation measurement with no mu subtraction: the raw aggregate
// sum_{r<=R, (r,a)=1} |inner(r)| rescaled by (|a|/phi(|a|))^2 M/x, against
// the nu_average prediction. Full mode only.
struct NuMeasurement {
  double measured_nu = 0.0;
  double predicted_nu = 0.0;
  double bracket = 0.0;
  double raw_aggregate = 0.0;
};

NuMeasurement nu_measurement(const PrimeTable& pt, const ExperimentConfig& cfg,
                             const ConstantsEngine& constants, int threads = 0);

// Dyadic r-sum of | inner(r) - x * bracket(r) | where
// bracket(r) = (C1(a,r)/r) log(r'M) + C3(a,r)/r - weighted_sum(a, r, M).
// Integer M is the exact form; non-integer M adds an O(x loglog M / M^2)
// term that the caller can measure by comparison.
struct Prop61Result {
  struct Row {
    uint64_t r = 1;
    double inner = 0.0;
    double bracket_times_x = 0.0;
    double abs_dev = 0.0;
  };
  std::vector<Row> rows;
  double aggregate = 0.0;
  std::array<double, 3> x_over_logA{};
};

Prop61Result prop61_check(const PrimeTable& pt, uint64_t x, double R, double M,
                          int64_t a, const ConstantsEngine& constants,
                          bool override_lambda_guard = false, int threads = 0);

}  // namespace bfilab

#endif  // BFILAB_EXPERIMENTS_HPP
