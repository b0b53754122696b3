#include "bfilab/progressions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bfilab/errors.hpp"
#include "bfilab/parallel.hpp"

namespace bfilab {

namespace {

uint64_t normalize_residue(int64_t a, uint64_t m) {
  int64_t md = static_cast<int64_t>(m);
  int64_t r = a % md;
  if (r < 0) r += md;
  return static_cast<uint64_t>(r);
}

// First n = a (mod m) with n > lower.
uint64_t first_in_class_above(int64_t a, uint64_t m, uint64_t lower) {
  uint64_t n = normalize_residue(a, m);
  if (n <= lower) n += ((lower - n) / m + 1) * m;
  return n;
}

void check_table(const PrimeTable& pt, uint64_t x) {
  if (pt.limit() < x)
    throw ResourceError("progressions: prime table smaller than x");
}

}  // namespace

std::string delta_method_name(DeltaMethod m) {
  return m == DeltaMethod::kStepping ? "stepping" : "divisor_transform";
}

ProgressionTally psi_progression(const PrimeTable& pt, uint64_t x, uint64_t q,
                                 int64_t a, RangeConvention range) {
  if (x < 2) throw std::domain_error("psi: x must be >= 2");
  if (q < 1) throw std::domain_error("psi: q must be >= 1");
  check_table(pt, x);

  ProgressionTally tally;
  tally.x = x;
  tally.q = q;
  tally.a = a;
  tally.range = range;

  uint64_t lower = range == RangeConvention::kAboveAbsA ? abs_u64(a) : 0;
  for (uint64_t n = first_in_class_above(a, q, lower); n <= x; n += q) {
    if (pt.is_prime(n)) {
      double lp = std::log(static_cast<double>(n));
      tally.psi_exact += lp;
      tally.theta_exact += lp;
      ++tally.prime_count;
    } else if (pt.is_proper_prime_power(n)) {
      tally.psi_exact += std::log(static_cast<double>(pt.prime_power_base(n)));
    }
  }
  tally.psi = static_cast<double>(tally.psi_exact);
  tally.theta = static_cast<double>(tally.theta_exact);
  return tally;
}

double delta_sum(const PrimeTable& pt, uint64_t x, uint64_t r, uint64_t q_max,
                 int64_t a, DeltaMethod method, int threads) {
  if (a == 0) throw std::domain_error("delta_sum: a must be nonzero");
  if (r == 0) throw std::domain_error("delta_sum: r must be positive");
  if (x < 2) throw std::domain_error("delta_sum: x must be >= 2");
  const uint64_t aa = abs_u64(a);
  if (gcd_u64(r, aa) != 1)
    throw std::domain_error("delta_sum: r must be coprime to a");
  if (q_max == 0) return 0.0;
  if (q_max > x / r)
    throw std::domain_error("delta_sum: q_max * r must not exceed x");
  check_table(pt, x);

  // Admissible moduli in increasing q.
  std::vector<uint64_t> qs;
  qs.reserve(q_max);
  for (uint64_t q = 1; q <= q_max; ++q)
    if (gcd_u64(q, aa) == 1) qs.push_back(q);

  const Factorization fr = factorize(r);
  SpfTable spf(static_cast<uint32_t>(q_max));

  // x/phi(qr) corrections, identical for both methods.
  std::vector<quad> phi_terms(qs.size());
  parallel_for(qs.size(), [&](uint64_t i) {
    uint64_t phi_qr =
        merge_factorizations(fr, spf.factorize(static_cast<uint32_t>(qs[i]))).phi;
    phi_terms[i] = quad(x) / quad(phi_qr);
  }, threads);

  quad total = 0;
  if (method == DeltaMethod::kStepping) {
    std::vector<quad> psi_terms(qs.size());
    parallel_for(qs.size(), [&](uint64_t i) {
      const uint64_t m = qs[i] * r;
      quad acc = 0;
      for (uint64_t n = first_in_class_above(a, m, aa); n <= x; n += m) {
        if (pt.is_prime(n))
          acc += std::log(static_cast<double>(n));
        else if (pt.is_proper_prime_power(n))
          acc += std::log(static_cast<double>(pt.prime_power_base(n)));
      }
      psi_terms[i] = acc;
    }, threads);
    for (size_t i = 0; i < qs.size(); ++i)
      total += psi_terms[i] - phi_terms[i];
  } else {
    // sum over |a| < n <= x, n = a (mod r), of Lambda(n) * #{q | (n-a)/r,
    // q <= q_max, (q,|a|)=1}; fixed chunking keeps the fold order thread-
    // independent.
    const uint64_t first = first_in_class_above(a, r, aa);
    std::vector<uint64_t> hits;
    for (uint64_t n = first; n <= x; n += r)
      if (pt.is_prime(n) || pt.is_proper_prime_power(n)) hits.push_back(n);

    std::vector<quad> contrib(hits.size());
    parallel_for(hits.size(), [&](uint64_t i) {
      const uint64_t n = hits[i];
      double lambda = pt.is_prime(n)
                          ? std::log(static_cast<double>(n))
                          : std::log(static_cast<double>(pt.prime_power_base(n)));
      // (n - a)/r is a positive integer since n = a (mod r) and n > |a| >= a.
      uint64_t k = (static_cast<uint64_t>(static_cast<int64_t>(n) - a)) / r;
      uint64_t count = coprime_divisor_count(k, q_max, a);
      contrib[i] = quad(lambda) * quad(count);
    }, threads);
    for (const quad& c : contrib) total += c;
    for (const quad& c : phi_terms) total -= c;
  }
  return static_cast<double>(total);
}

SwitchReport divisor_switch_check(const PrimeTable& pt, uint64_t x, uint64_t r,
                                  double P, int64_t a) {
  if (a == 0) throw std::domain_error("switch check: a must be nonzero");
  if (r == 0) throw std::domain_error("switch check: r must be positive");
  if (!(P >= 2.0)) throw std::domain_error("switch check: P must be >= 2");
  if (x < 2) throw std::domain_error("switch check: x must be >= 2");
  const uint64_t aa = abs_u64(a);
  if (gcd_u64(r, aa) != 1)
    throw std::domain_error("switch check: r must be coprime to a");
  check_table(pt, x);

  SwitchReport report;
  report.x = x;
  report.r = r;
  report.P = P;
  report.a = a;

  const double xd = static_cast<double>(x);
  const double rd = static_cast<double>(r);
  const double ad = static_cast<double>(a);

  // lhs: x/(rP) < q <= x/r (strict lower bound), (q,a)=1.
  quad lhs = 0;
  const uint64_t q_hi = x / r;  // q r <= x
  uint64_t q_start = static_cast<uint64_t>(xd / (rd * P));
  if (q_start < 1) q_start = 1;
  for (uint64_t q = q_start; q <= q_hi; ++q) {
    if (!(static_cast<double>(q) * rd * P > xd)) continue;  // q > x/(rP)
    if (gcd_u64(q, aa) != 1) continue;
    const uint64_t m = q * r;
    for (uint64_t p = first_in_class_above(a, m, aa); p <= x; p += m) {
      if (!pt.is_prime(p)) continue;
      lhs += std::log(static_cast<double>(p));
      report.lhs_pairs.push_back({p, q});
    }
  }

  // rhs: 1 <= s < P - aP/x, (s,a)=1; primes sx/P + a <= p <= x, p = a (sr).
  quad rhs = 0;
  for (uint64_t s = 1; static_cast<double>(s) * xd < P * (xd - ad); ++s) {
    if (gcd_u64(s, aa) != 1) continue;
    const uint64_t m = s * r;
    const double p_lo_real = static_cast<double>(s) * xd / P + ad;
    for (uint64_t p = normalize_residue(a, m) == 0 ? m : normalize_residue(a, m);
         p <= x; p += m) {
      if (static_cast<double>(p) < p_lo_real) continue;
      if (!pt.is_prime(p)) continue;
      rhs += std::log(static_cast<double>(p));
      report.rhs_pairs.push_back({p, s});
    }
  }

  report.lhs = static_cast<double>(lhs);
  report.rhs = static_cast<double>(rhs);
  report.diff = report.rhs - report.lhs;

  // Match pairs through the bijection s = (p - a)/(qr), q = (p - a)/(sr).
  // A pair is unmatched exactly when its image violates a constraint of the
  // other side; record which.
  std::map<std::pair<uint64_t, uint64_t>, int> rhs_index;  // (p, s) -> count
  for (const auto& pr : report.rhs_pairs) ++rhs_index[{pr.p, pr.cofactor}];
  std::map<std::pair<uint64_t, uint64_t>, int> lhs_index;
  for (const auto& pr : report.lhs_pairs) ++lhs_index[{pr.p, pr.cofactor}];

  // p - a is positive on both sides (p > 0 and p = a (mod m) with p != a).
  auto p_minus_a = [&](uint64_t p) -> uint64_t {
    return a >= 0 ? p - static_cast<uint64_t>(a) : p + aa;
  };

  for (const auto& pr : report.lhs_pairs) {
    const uint64_t s = p_minus_a(pr.p) / (pr.cofactor * r);
    std::vector<std::string> violations;
    if (!(static_cast<double>(s) * xd < P * (xd - ad)))
      violations.push_back("s < P - aP/x");
    if (gcd_u64(s, aa) != 1) violations.push_back("(s,a)=1");
    if (static_cast<double>(pr.p) < static_cast<double>(s) * xd / P + ad)
      violations.push_back("p >= sx/P + a");
    if (violations.empty() && !rhs_index.count({pr.p, s}))
      violations.push_back("image absent from rhs enumeration");
    if (!violations.empty())
      report.unmatched.push_back({pr.p, pr.cofactor, 'L', std::move(violations)});
  }
  for (const auto& pr : report.rhs_pairs) {
    const uint64_t q = p_minus_a(pr.p) / (pr.cofactor * r);
    std::vector<std::string> violations;
    if (!(static_cast<double>(q) * rd * P > xd))
      violations.push_back("q > x/(rP)");
    if (q * r > x) violations.push_back("q <= x/r");
    if (gcd_u64(q, aa) != 1) violations.push_back("(q,a)=1");
    if (pr.p <= aa) violations.push_back("p > |a|");
    if (violations.empty() && !lhs_index.count({pr.p, q}))
      violations.push_back("image absent from lhs enumeration");
    if (!violations.empty())
      report.unmatched.push_back({pr.p, pr.cofactor, 'R', std::move(violations)});
  }

  const double log_x = std::log(xd);
  if (!(std::fabs(report.diff) <= 4.0 * log_x * log_x))
    throw InvariantError("divisor switch invariant breach: |rhs-lhs| exceeds 4 log^2 x");
  return report;
}

}  // namespace bfilab
