#ifndef BFILAB_CONSTANTS_HPP
#define BFILAB_CONSTANTS_HPP

#include <cstdint>
#include <string>

#include "bfilab/arith.hpp"
#include "bfilab/rational.hpp"

namespace bfilab {

enum class ConstantKind {
  kC1,
  kC2,
  kC3,
  kC5,
  kC6,
  kGamma,
  kZetaRatio,
  kPrimeSumPhi,  // sum over p of log p / (p(p-1))
  kPrimeSumSq,   // sum over p of log p / p^2
};

std::string constant_kind_name(ConstantKind kind);

// A numerical constant together with the prime-sum truncation point it was
// computed at and a rigorous bound on the truncation remainder. Floating
// point roundoff is budgeted separately at 1e-13 relative.
struct ConstantValue {
  ConstantKind kind = ConstantKind::kC1;
  int64_t a = 1;
  uint64_t r = 1;
  double value = 0.0;
  uint64_t cutoff = 0;
  double tail_bound = 0.0;
};

struct ConstantFamily {
  ConstantValue c1, c2, c3, c5;
};

// Evaluates the singular-series constants
//
//   C1(a,r) = Z * prod_{p|a} (1 - p/(p^2-p+1)) * prod_{p|r} (1 + (p-1)/(p^2-p+1))
//   C2(a,r) = C1(a,r) * (gamma - S + sum_{p|a} w(p) log p - sum_{p|r} v(p) log p)
//   C3(a,r) = C2(a,r) - C1(a,r)
//   C5(r)   = (log 2pi + 1 + gamma + sum_p log p/(p(p-1)) + sum_{p|r} log p/p) / 2
//   C6      = C5(1) + 1/2 + (1/2) sum_p log p / p^2
//
// where Z = prod_p (1 + 1/(p(p-1))) = zeta(2)zeta(3)/zeta(6),
// S = sum_p log p/(p^2-p+1), w(p) = p^2/((p-1)(p^2-p+1)) and
// v(p) = (p-1)p/(p^2-p+1).
//
// The infinite prime sums are truncated at `cutoff`, and every truncation
// tail is restored through the prime zeta function and its log-weighted
// companion, leaving remainders far below the 4 log(cutoff)/cutoff contract
// (the experiments measure residuals down to ~1e-12, which a plain 1/cutoff
// tail would drown). Finite products over p | ar are exact rationals until
// the final rounding.
//
// All evaluation happens in the constructor; const methods are safe to call
// concurrently.
class ConstantsEngine {
 public:
  explicit ConstantsEngine(uint64_t cutoff = 1'000'000);

  uint64_t cutoff() const { return cutoff_; }

  // Requires gcd(|a|, r) = 1.
  ConstantFamily family(int64_t a, uint64_t r) const;
  ConstantValue c1(int64_t a, uint64_t r) const;
  ConstantValue c2(int64_t a, uint64_t r) const;
  ConstantValue c3(int64_t a, uint64_t r) const;
  ConstantValue c5(uint64_t r) const;
  ConstantValue c6() const;

  ConstantValue gamma() const;
  ConstantValue zeta_ratio() const;     // zeta(2)zeta(3)/zeta(6) via zeta series
  ConstantValue prime_sum_phi() const;  // sum_p log p/(p(p-1))
  ConstantValue prime_sum_sq() const;   // sum_p log p/p^2

  // Exact rational part of C1(a,r)/Z: prod_{p|a}(p-1)^2/(p^2-p+1) times
  // prod_{p|r} p^2/(p^2-p+1).
  Rational c1_rational(int64_t a, uint64_t r) const;

  // Plain double values for the main-term assembly paths.
  double c1_value(int64_t a, uint64_t r) const { return c1(a, r).value; }
  double c2_value(int64_t a, uint64_t r) const { return c2(a, r).value; }
  double c3_value(int64_t a, uint64_t r) const { return c3(a, r).value; }
  double c5_value(uint64_t r) const { return c5(r).value; }
  double c6_value() const { return c6().value; }

 private:
  void require_coprime(int64_t a, uint64_t r) const;

  uint64_t cutoff_;
  // Universal pieces, fixed once per engine.
  double z_truncated_ = 0.0;   // tail-corrected prod_{p<=cutoff}(1+1/(p(p-1)))
  double z_tail_bound_ = 0.0;
  double s_truncated_ = 0.0;   // sum_{p<=cutoff} log p/(p^2-p+1)
  double s_tail_bound_ = 0.0;
  double phi_sum_ = 0.0;       // sum_{p<=cutoff} log p/(p(p-1))
  double phi_tail_bound_ = 0.0;
  double sq_sum_ = 0.0;        // sum_{p<=cutoff} log p/p^2
  double sq_tail_bound_ = 0.0;
  double gamma_ = 0.0;
  double gamma_err_ = 0.0;
  double zeta_ratio_ = 0.0;
  double zeta_ratio_err_ = 0.0;
};

// Euler-Maclaurin evaluation with a rigorous remainder bound; exposed for
// the test-side oracles.
struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;
};

SeriesValue zeta_series(double s, uint64_t terms = 10'000);        // zeta(s), s >= 2
SeriesValue zeta_deriv_series(double s, uint64_t terms = 10'000);  // zeta'(s)
SeriesValue prime_zeta(double s);      // P(s) = sum_p p^-s, s >= 2
SeriesValue prime_log_zeta(double s);  // L(s) = sum_p log p * p^-s, s >= 2
SeriesValue euler_gamma_series(uint64_t terms = 100'000);

}  // namespace bfilab

#endif  // BFILAB_CONSTANTS_HPP
