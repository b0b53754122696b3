#include "bfilab/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "bfilab/accumulate.hpp"
#include "bfilab/errors.hpp"

namespace bfilab {

namespace {

constexpr double kDecayExponent = 743.0 / 538.0;

std::array<double, 3> log_power_refs(uint64_t x) {
  std::array<double, 3> refs{};
  const double logx = std::log(static_cast<double>(x));
  for (int A = 1; A <= 3; ++A)
    refs[A - 1] = static_cast<double>(x) / std::pow(logx, static_cast<double>(A));
  return refs;
}

}  // namespace

std::string experiment_mode_name(ExperimentMode mode) {
  return mode == ExperimentMode::kDyadic ? "dyadic" : "full";
}

std::string ExperimentConfig::validate() const {
  if (x < 2) throw std::domain_error("experiment config: x must be >= 2");
  if (a == 0) throw std::domain_error("experiment config: a must be nonzero");
  if (!(M >= 1.0)) throw std::domain_error("experiment config: M must be >= 1");
  if (!(R > 0.0)) throw std::domain_error("experiment config: R must be positive");
  if (!(lambda_guard > 0.0))
    throw std::domain_error("experiment config: lambda_guard must be positive");
  const double bound = std::pow(static_cast<double>(x), lambda_guard);
  if (R > bound) {
    if (!override_lambda_guard)
      throw std::domain_error(
          "experiment config: R exceeds x^lambda_guard; pass the override to proceed");
    return "warning: R = " + std::to_string(R) + " exceeds x^lambda_guard = " +
           std::to_string(bound) + " (override in effect)";
  }
  return "";
}

double mu_average(int64_t a, uint64_t r, double M,
                  const ConstantsEngine& constants) {
  if (a == 0) throw std::domain_error("mu_average: a must be nonzero");
  if (r == 0) throw std::domain_error("mu_average: r must be positive");
  if (!(M >= 1.0)) throw std::domain_error("mu_average: M must be >= 1");
  const uint64_t aa = abs_u64(a);
  if (gcd_u64(r, aa) != 1)
    throw std::domain_error("mu_average: r must be coprime to a");
  const Factorization fa = factorize(aa);
  if (fa.omega == 0) return -0.5 * std::log(M) - constants.c5_value(r);
  if (fa.omega == 1)
    return -0.5 * std::log(static_cast<double>(fa.factors[0].prime));
  return 0.0;
}

NuAverage nu_average(int64_t a, double M, double R,
                     const ConstantsEngine& constants) {
  if (a == 0) throw std::domain_error("nu_average: a must be nonzero");
  if (!(M >= 1.0) || !(R >= 1.0))
    throw std::domain_error("nu_average: M and R must be >= 1");
  const uint64_t aa = abs_u64(a);
  const Factorization fa = factorize(aa);
  NuAverage out;
  if (fa.omega == 0) {
    out.leading = (0.5 * std::log(M) + constants.c6_value()) *
                  (std::floor(R) / R);
    out.bracket = std::log(R * M) / R;
  } else if (fa.omega == 1) {
    uint64_t coprime_count = 0;
    for (uint64_t r = 1; r <= static_cast<uint64_t>(R); ++r)
      if (gcd_u64(r, aa) == 1) ++coprime_count;
    out.leading = 0.5 * std::log(static_cast<double>(fa.factors[0].prime)) *
                  (static_cast<double>(aa) / static_cast<double>(fa.phi)) *
                  (static_cast<double>(coprime_count) / R);
    out.bracket = 1.0 / R;
  }
  return out;
}

namespace {

struct RowSpec {
  uint64_t r;
  uint64_t q_max;
  double budget;  // the real q-bound (x/(rM) or x/(RM))
  double mu_arg;
};

std::vector<RowSpec> admissible_rows(const ExperimentConfig& cfg) {
  std::vector<RowSpec> rows;
  const uint64_t aa = abs_u64(cfg.a);
  const double xd = static_cast<double>(cfg.x);
  uint64_t r_lo, r_hi;
  if (cfg.mode == ExperimentMode::kDyadic) {
    r_lo = static_cast<uint64_t>(std::floor(cfg.R / 2.0)) + 1;
    r_hi = static_cast<uint64_t>(std::floor(cfg.R));
  } else {
    r_lo = 1;
    r_hi = static_cast<uint64_t>(std::floor(cfg.R));
  }
  for (uint64_t r = r_lo; r <= r_hi; ++r) {
    if (gcd_u64(r, aa) != 1) continue;
    RowSpec spec;
    spec.r = r;
    if (cfg.mode == ExperimentMode::kDyadic) {
      spec.budget = xd / (static_cast<double>(r) * cfg.M);
      spec.mu_arg = cfg.M;
    } else {
      spec.budget = xd / (cfg.R * cfg.M);
      spec.mu_arg = cfg.R * cfg.M / static_cast<double>(r);
    }
    spec.q_max = static_cast<uint64_t>(std::floor(spec.budget));
    rows.push_back(spec);
  }
  return rows;
}

}  // namespace

DeviationTable deviation_table(const PrimeTable& pt,
                               const ExperimentConfig& cfg,
                               const ConstantsEngine& constants, int threads) {
  cfg.validate();
  if (pt.limit() < cfg.x)
    throw ResourceError("deviation_table: prime table smaller than x");

  DeviationTable table;
  const uint64_t aa = abs_u64(cfg.a);
  const Factorization fa = factorize(aa);
  const double phi_ratio =
      static_cast<double>(fa.phi) / static_cast<double>(aa);

  quad aggregate = 0;
  for (const RowSpec& spec : admissible_rows(cfg)) {
    DeviationRow row;
    row.r = spec.r;
    row.inner = delta_sum(pt, cfg.x, spec.r, spec.q_max, cfg.a,
                          DeltaMethod::kStepping, threads);
    row.prediction = phi_ratio * spec.budget *
                     mu_average(cfg.a, spec.r, spec.mu_arg, constants);
    row.abs_dev = std::fabs(row.inner - row.prediction);
    aggregate += row.abs_dev;
    table.rows.push_back(row);
  }
  table.aggregate = static_cast<double>(aggregate);
  table.ref_m_decay =
      static_cast<double>(cfg.x) / std::pow(cfg.M, kDecayExponent);
  table.x_over_logA = log_power_refs(cfg.x);
  return table;
}

NuMeasurement nu_measurement(const PrimeTable& pt, const ExperimentConfig& cfg,
                             const ConstantsEngine& constants, int threads) {
  if (cfg.mode != ExperimentMode::kFull)
    throw std::domain_error("nu_measurement: full mode required");
  cfg.validate();
  if (pt.limit() < cfg.x)
    throw ResourceError("nu_measurement: prime table smaller than x");

  const uint64_t aa = abs_u64(cfg.a);
  const Factorization fa = factorize(aa);

  quad raw = 0;
  for (const RowSpec& spec : admissible_rows(cfg)) {
    double inner = delta_sum(pt, cfg.x, spec.r, spec.q_max, cfg.a,
                             DeltaMethod::kStepping, threads);
    raw += std::fabs(inner);
  }

  NuMeasurement out;
  out.raw_aggregate = static_cast<double>(raw);
  const double a_over_phi =
      static_cast<double>(aa) / static_cast<double>(fa.phi);
  out.measured_nu = out.raw_aggregate * a_over_phi * a_over_phi * cfg.M /
                    static_cast<double>(cfg.x);
  NuAverage nu = nu_average(cfg.a, cfg.M, cfg.R, constants);
  out.predicted_nu = nu.leading;
  out.bracket = nu.bracket;
  return out;
}

Prop61Result prop61_check(const PrimeTable& pt, uint64_t x, double R, double M,
                          int64_t a, const ConstantsEngine& constants,
                          bool override_lambda_guard, int threads) {
  ExperimentConfig cfg;
  cfg.x = x;
  cfg.R = R;
  cfg.M = M;
  cfg.a = a;
  cfg.mode = ExperimentMode::kDyadic;
  cfg.override_lambda_guard = override_lambda_guard;
  cfg.validate();
  if (pt.limit() < x)
    throw ResourceError("prop61_check: prime table smaller than x");

  Prop61Result result;
  const double xd = static_cast<double>(x);
  quad aggregate = 0;
  for (const RowSpec& spec : admissible_rows(cfg)) {
    const uint64_t r = spec.r;
    const double rd = static_cast<double>(r);
    const double radical = static_cast<double>(factorize(r).radical);
    Prop61Result::Row row;
    row.r = r;
    row.inner = delta_sum(pt, x, r, spec.q_max, a, DeltaMethod::kStepping,
                          threads);
    double bracket = constants.c1_value(a, r) / rd * std::log(radical * M) +
                     constants.c3_value(a, r) / rd -
                     weighted_sum(a, r, M, constants).lhs;
    row.bracket_times_x = xd * bracket;
    row.abs_dev = std::fabs(row.inner - row.bracket_times_x);
    aggregate += row.abs_dev;
    result.rows.push_back(row);
  }
  result.aggregate = static_cast<double>(aggregate);
  result.x_over_logA = log_power_refs(x);
  return result;
}

}  // namespace bfilab
