#include "bfilab/totient_sums.hpp"

#include <cmath>
#include <stdexcept>

#include "bfilab/accumulate.hpp"

namespace bfilab {

namespace {

void require_inputs(int64_t a, uint64_t r, double M) {
  if (a == 0) throw std::domain_error("totient sums: a must be nonzero");
  if (r == 0) throw std::domain_error("totient sums: r must be positive");
  if (!(M >= 1.0)) throw std::domain_error("totient sums: M must be >= 1");
  if (M > 5e8) throw std::domain_error("totient sums: M beyond desk-scale range");
  if (gcd_u64(abs_u64(a), r) != 1)
    throw std::domain_error("totient sums: a and r must be coprime");
}

// phi(r n) for n <= limit, via one factorization of r and an spf table.
class PhiRnEvaluator {
 public:
  PhiRnEvaluator(uint64_t r, uint32_t limit)
      : r_(factorize(r)), spf_(limit) {}

  uint64_t phi_rn(uint32_t n) const {
    return merge_factorizations(r_, spf_.factorize(n)).phi;
  }
  uint64_t phi_n(uint32_t n) const { return spf_.factorize(n).phi; }

 private:
  Factorization r_;
  SpfTable spf_;
};

}  // namespace

ResidualRow partial_sum(int kind, int64_t a, uint64_t r, double M,
                        const ConstantsEngine& constants) {
  if (kind < 1 || kind > 4)
    throw std::domain_error("partial_sum: kind must be in 1..4");
  require_inputs(a, kind >= 3 ? r : 1, M);

  const uint64_t aa = abs_u64(a);
  const uint64_t n_max = static_cast<uint64_t>(M);
  const uint64_t r_eff = kind >= 3 ? r : 1;
  PhiRnEvaluator eval(r_eff, static_cast<uint32_t>(n_max));

  quad acc = 0;
  for (uint64_t n = 1; n <= n_max; ++n) {
    if (gcd_u64(n, aa) != 1) continue;
    switch (kind) {
      case 1:
        acc += quad(n) / quad(eval.phi_n(static_cast<uint32_t>(n)));
        break;
      case 2:
        acc += quad(1) / quad(eval.phi_n(static_cast<uint32_t>(n)));
        break;
      case 3: {
        uint64_t rn = r_eff * n;
        acc += quad(rn) / quad(eval.phi_rn(static_cast<uint32_t>(n)));
        break;
      }
      case 4:
        acc += quad(1) / quad(eval.phi_rn(static_cast<uint32_t>(n)));
        break;
    }
  }

  double main = 0.0;
  switch (kind) {
    case 1:
      main = constants.c1_value(a, 1) * M;
      break;
    case 2:
      main = constants.c1_value(a, 1) * std::log(M) + constants.c2_value(a, 1);
      break;
    case 3:
      main = constants.c1_value(a, r) * M;
      break;
    case 4: {
      double radical = static_cast<double>(factorize(r).radical);
      double rd = static_cast<double>(r);
      main = constants.c1_value(a, r) / rd * std::log(radical * M) +
             constants.c2_value(a, r) / rd;
      break;
    }
  }

  ResidualRow row;
  row.M = M;
  row.lhs = static_cast<double>(acc);
  row.main_term = main;
  row.residual = row.lhs - row.main_term;
  return row;
}

WeightedSumResult weighted_sum(int64_t a, uint64_t r, double M,
                               const ConstantsEngine& constants) {
  require_inputs(a, r, M);

  const uint64_t aa = abs_u64(a);
  const uint64_t n_max = static_cast<uint64_t>(M);
  PhiRnEvaluator eval(r, static_cast<uint32_t>(n_max));

  quad acc = 0;
  for (uint64_t n = 1; n <= n_max; ++n) {
    if (gcd_u64(n, aa) != 1) continue;
    double weight = 1.0 - static_cast<double>(n) / M;
    acc += quad(weight) / quad(eval.phi_rn(static_cast<uint32_t>(n)));
  }

  const Factorization fa = factorize(aa);
  const double rd = static_cast<double>(r);
  const double radical = static_cast<double>(factorize(r).radical);
  const double c1 = constants.c1_value(a, r);
  const double c2 = constants.c2_value(a, r);
  const double c3 = constants.c3_value(a, r);

  WeightedSumResult out;
  out.lhs = static_cast<double>(acc);

  if (fa.omega == 0) {
    out.main_statement = c1 / rd * std::log(radical * M) + c3 / rd +
                         std::log(radical * M) / (2.0 * rd * M) +
                         constants.c5_value(1) / (rd * M);
    out.main_proof = c1 / rd * std::log(rd * M) + c2 / rd +
                     std::log(M) / (2.0 * rd * M) +
                     constants.c5_value(r) / (rd * M);
  } else {
    double lambda_a =
        fa.omega == 1 ? std::log(static_cast<double>(fa.factors[0].prime)) : 0.0;
    double main = c1 / rd * std::log(radical * M) + c3 / rd +
                  static_cast<double>(fa.phi) / static_cast<double>(aa) *
                      lambda_a / (2.0 * rd * M);
    out.main_statement = main;
    out.main_proof = main;
  }
  out.residual_statement = out.lhs - out.main_statement;
  out.residual_proof = out.lhs - out.main_proof;
  out.reported = WeightVariant::kStatement;
  out.row.M = M;
  out.row.lhs = out.lhs;
  out.row.main_term = out.main_statement;
  out.row.residual = out.residual_statement;
  return out;
}

ExponentFitResult fit_error_exponent(const std::vector<ResidualRow>& rows) {
  for (size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].M > rows[i - 1].M))
      throw std::domain_error("fit_error_exponent: rows must be strictly increasing in M");

  std::vector<double> xs, ys;
  int excluded = 0;
  for (const auto& row : rows) {
    if (row.residual == 0.0) {
      ++excluded;
      continue;
    }
    xs.push_back(std::log(row.M));
    ys.push_back(std::log(std::fabs(row.residual)));
  }
  if (xs.size() < 3)
    throw std::domain_error("fit_error_exponent: fewer than 3 usable rows");
  double span = std::exp(xs.back()) / std::exp(xs.front());
  if (span < 100.0)
    throw std::domain_error("fit_error_exponent: M values must span >= 2 decades");

  const size_t n = xs.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  double slope_raw = sxy / sxx;
  double intercept = my - slope_raw * mx;
  double ss_res = 0, ss_tot = 0;
  for (size_t i = 0; i < n; ++i) {
    double fit = slope_raw * xs[i] + intercept;
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  double rsq = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;

  ExponentFitResult out;
  out.fit.slope = -slope_raw;  // positive decay exponent
  out.fit.intercept = intercept;
  out.fit.rsq = rsq;
  out.fit.points = static_cast<int>(n);
  out.excluded_zero_rows = excluded;
  return out;
}

}  // namespace bfilab
