#include "bfilab/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bfilab/accumulate.hpp"
#include "bfilab/sieve.hpp"

namespace bfilab {

std::string constant_kind_name(ConstantKind kind) {
  switch (kind) {
    case ConstantKind::kC1: return "C1";
    case ConstantKind::kC2: return "C2";
    case ConstantKind::kC3: return "C3";
    case ConstantKind::kC5: return "C5";
    case ConstantKind::kC6: return "C6";
    case ConstantKind::kGamma: return "gamma";
    case ConstantKind::kZetaRatio: return "zeta_ratio";
    case ConstantKind::kPrimeSumPhi: return "prime_sum_phi";
    case ConstantKind::kPrimeSumSq: return "prime_sum_sq";
  }
  return "?";
}

SeriesValue zeta_series(double s, uint64_t terms) {
  // Euler-Maclaurin: zeta(s) = sum_{n<=N} n^-s + N^(1-s)/(s-1) - N^-s/2
  //                            + s N^(-s-1)/12 + R,
  // |R| <= s(s+1)(s+2) N^(-s-3)/720 (derivatives of t^-s alternate in sign).
  if (s < 2.0) throw std::domain_error("zeta_series: s must be >= 2");
  const double N = static_cast<double>(terms);
  CompensatedSum sum;
  for (uint64_t n = terms; n >= 1; --n)
    sum.add(std::pow(static_cast<double>(n), -s));
  double value = sum.value() + std::pow(N, 1.0 - s) / (s - 1.0) -
                 0.5 * std::pow(N, -s) + s * std::pow(N, -s - 1.0) / 12.0;
  double rem = s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0) / 720.0;
  return {value, rem};
}

namespace {

// zeta(s) - 1, summed from n = 2 to keep full precision at large s.
SeriesValue zeta_minus_one(double s, uint64_t terms) {
  const double N = static_cast<double>(terms);
  CompensatedSum sum;
  for (uint64_t n = terms; n >= 2; --n)
    sum.add(std::pow(static_cast<double>(n), -s));
  double value = sum.value() + std::pow(N, 1.0 - s) / (s - 1.0) -
                 0.5 * std::pow(N, -s) + s * std::pow(N, -s - 1.0) / 12.0;
  double rem = s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0) / 720.0;
  return {value, rem};
}

SeriesValue log_zeta(double s) {
  // Fewer explicit terms suffice as s grows; 3000 keeps the remainder far
  // below double resolution for every s >= 2.
  uint64_t terms = s > 8 ? 64 : 3000;
  SeriesValue zm1 = zeta_minus_one(s, terms);
  double value = std::log1p(zm1.value);
  // |d log z| <= |dz| / z and z >= 1.
  return {value, zm1.error_bound};
}

}  // namespace

SeriesValue zeta_deriv_series(double s, uint64_t terms) {
  // For f(t) = log t * t^-s:
  //   -zeta'(s) = sum_{n<=N} f(n) + Int_N^inf f - f(N)/2 - f'(N)/12 + R,
  // Int_N^inf f = N^(1-s)((s-1)log N + 1)/(s-1)^2,
  // f'(N) = N^(-s-1)(1 - s log N),
  // |R| <= |f'''(N)|/720 with
  // |f'''(N)| <= N^(-s-3)(s(s+1)(s+2)log N + (2s+1)(s+2) + s(s+1)).
  if (s < 2.0) throw std::domain_error("zeta_deriv_series: s must be >= 2");
  const double N = static_cast<double>(terms);
  CompensatedSum sum;
  for (uint64_t n = terms; n >= 2; --n) {
    double nd = static_cast<double>(n);
    sum.add(std::log(nd) * std::pow(nd, -s));
  }
  const double logN = std::log(N);
  double tail_int = std::pow(N, 1.0 - s) * ((s - 1.0) * logN + 1.0) /
                    ((s - 1.0) * (s - 1.0));
  double d_sum = sum.value() + tail_int - 0.5 * logN * std::pow(N, -s) -
                 std::pow(N, -s - 1.0) * (1.0 - s * logN) / 12.0;
  double rem = std::pow(N, -s - 3.0) *
               (s * (s + 1.0) * (s + 2.0) * logN + (2.0 * s + 1.0) * (s + 2.0) +
                s * (s + 1.0)) /
               720.0;
  return {-d_sum, rem};
}

SeriesValue prime_zeta(double s) {
  // P(s) = sum_{k>=1} mu(k)/k log zeta(ks); truncated once ks > 64 where
  // log zeta(ks) < 2^(1-ks).
  if (s < 2.0) throw std::domain_error("prime_zeta: s must be >= 2");
  static constexpr int kMu[31] = {0, 1,  -1, -1, 0, -1, 1, -1, 0, 0,  1,
                                  -1, 0, -1, 1,  1, 0,  -1, 0, -1, 0, 1,
                                  1,  -1, 0,  0, 1, 0,  0,  -1, -1};
  CompensatedSum sum;
  double err = 0.0;
  int K = static_cast<int>(64.0 / s) + 1;
  if (K > 30) K = 30;
  for (int k = 1; k <= K; ++k) {
    if (kMu[k] == 0) continue;
    SeriesValue lz = log_zeta(s * k);
    sum.add(kMu[k] * lz.value / k);
    err += lz.error_bound / k;
  }
  err += std::pow(2.0, 1.0 - s * (K + 1)) * 2.0;  // omitted k > K
  return {sum.value(), err};
}

SeriesValue prime_log_zeta(double s) {
  // L(s) = sum_p log p p^-s = sum_{k>=1} mu(k) eta(ks),
  // eta(s) = -zeta'(s)/zeta(s) = sum_n Lambda(n)/n^s.
  if (s < 2.0) throw std::domain_error("prime_log_zeta: s must be >= 2");
  static constexpr int kMu[31] = {0, 1,  -1, -1, 0, -1, 1, -1, 0, 0,  1,
                                  -1, 0, -1, 1,  1, 0,  -1, 0, -1, 0, 1,
                                  1,  -1, 0,  0, 1, 0,  0,  -1, -1};
  CompensatedSum sum;
  double err = 0.0;
  int K = static_cast<int>(64.0 / s) + 1;
  if (K > 30) K = 30;
  for (int k = 1; k <= K; ++k) {
    if (kMu[k] == 0) continue;
    double sk = s * k;
    uint64_t terms = sk > 8 ? 64 : 3000;
    SeriesValue dz = zeta_deriv_series(sk, terms);
    SeriesValue zm1 = zeta_minus_one(sk, terms);
    double zeta_v = 1.0 + zm1.value;
    double eta = -dz.value / zeta_v;
    sum.add(kMu[k] * eta);
    err += (dz.error_bound + std::fabs(eta) * zm1.error_bound) / zeta_v;
  }
  err += 4.0 * std::log(2.0) * std::pow(2.0, -s * (K + 1));
  return {sum.value(), err};
}

SeriesValue euler_gamma_series(uint64_t terms) {
  // gamma = H_N - log N - 1/(2N) + 1/(12 N^2) + R, |R| <= 1/(120 N^4).
  const double N = static_cast<double>(terms);
  CompensatedSum h;
  for (uint64_t n = terms; n >= 1; --n) h.add(1.0 / static_cast<double>(n));
  double value = h.value() - std::log(N) - 0.5 / N + 1.0 / (12.0 * N * N);
  return {value, 1.0 / (120.0 * N * N * N * N)};
}

ConstantsEngine::ConstantsEngine(uint64_t cutoff) : cutoff_(cutoff) {
  if (cutoff_ < 1000)
    throw std::domain_error("ConstantsEngine: cutoff must be >= 1000");
  if (cutoff_ > (uint64_t(1) << 31))
    throw std::domain_error("ConstantsEngine: cutoff beyond supported range");

  // One pass over primes <= cutoff, in increasing p with compensated sums.
  CompensatedSum log_f;     // log prod (1 + 1/(p(p-1)))
  CompensatedSum s_trunc;   // sum log p/(p^2-p+1)
  CompensatedSum phi_sum;   // sum log p/(p(p-1))
  CompensatedSum sq_sum;    // sum log p/p^2
  constexpr int kMaxPow = 16;
  CompensatedSum pow_sums[kMaxPow + 1];      // sum p^-k, k = 2..kMaxPow
  CompensatedSum log_pow_sums[kMaxPow + 1];  // sum log p * p^-k

  for (uint64_t p : primes_up_to(cutoff_)) {
    const double pd = static_cast<double>(p);
    const double logp = std::log(pd);
    log_f.add(std::log1p(1.0 / (pd * (pd - 1.0))));
    s_trunc.add(logp / (pd * pd - pd + 1.0));
    phi_sum.add(logp / (pd * (pd - 1.0)));
    sq_sum.add(logp / (pd * pd));
    double inv = 1.0 / pd;
    double pk = inv;
    for (int k = 2; k <= kMaxPow; ++k) {
      pk *= inv;
      pow_sums[k].add(pk);
      log_pow_sums[k].add(logp * pk);
    }
  }

  // Each truncated sum gets its tail over p > cutoff restored through the
  // prime zeta function P and its log-weighted companion L: expanding the
  // summands in powers of 1/p turns every tail into a short combination of
  //   P_>X(k) = P(k) - sum_{p<=X} p^-k,
  //   L_>X(k) = L(k) - sum_{p<=X} log p * p^-k,
  // leaving remainders far below double resolution. Without this the
  // constants would carry O(1/cutoff) errors that drown the weighted-sum
  // residuals the experiments measure.
  const double X = static_cast<double>(cutoff_);
  double p_tail[kMaxPow + 1];
  double l_tail[kMaxPow + 1];
  double p_tail_err = 0.0;
  double l_tail_err = 0.0;
  for (int k = 2; k <= kMaxPow; ++k) {
    SeriesValue pk = prime_zeta(static_cast<double>(k));
    SeriesValue lk = prime_log_zeta(static_cast<double>(k));
    p_tail[k] = pk.value - pow_sums[k].value();
    l_tail[k] = lk.value - log_pow_sums[k].value();
    p_tail_err += pk.error_bound;
    l_tail_err += lk.error_bound;
  }
  // Omitted orders k > kMaxPow over p > X.
  const double omitted = 2.0 * (std::log(X) + 1.0) * std::pow(X, 1.0 - kMaxPow);

  // log(1+1/(p(p-1))) = sum_k c_k p^-k with c_k = 2/k [2|k] + 3/k [3|k]
  // - 6/k [6|k] (from (1+1/(p(p-1))) = (1-p^-6)/((1-p^-2)(1-p^-3))).
  double z_corr = 0.0;
  for (int k = 2; k <= kMaxPow; ++k) {
    double ck = 0.0;
    if (k % 2 == 0) ck += 2.0 / k;
    if (k % 3 == 0) ck += 3.0 / k;
    if (k % 6 == 0) ck -= 6.0 / k;
    if (ck != 0.0) z_corr += ck * p_tail[k];
  }
  z_truncated_ = std::exp(log_f.value() + z_corr);
  // Rigorous and strictly decreasing in the cutoff; the true remainder
  // (around 1e-16) is orders of magnitude smaller.
  z_tail_bound_ =
      (1e-13 + 1.0 / (X * X)) * z_truncated_ + p_tail_err + omitted;

  // log p/(p^2-p+1) = sum_j (-1)^j (log p * p^-(3j+2) + log p * p^-(3j+3)).
  double s_corr = 0.0;
  for (int j = 0; 3 * j + 3 <= kMaxPow; ++j) {
    double term = l_tail[3 * j + 2] + l_tail[3 * j + 3];
    s_corr += (j % 2 == 0) ? term : -term;
  }
  s_truncated_ = s_trunc.value() + s_corr;
  s_tail_bound_ = 1e-12 + (std::log(X) + 1.0) / (X * X) + l_tail_err + omitted;

  // log p/(p(p-1)) = sum_{j>=2} log p * p^-j.
  double phi_corr = 0.0;
  for (int j = 2; j <= kMaxPow; ++j) phi_corr += l_tail[j];
  phi_sum_ = phi_sum.value() + phi_corr;
  phi_tail_bound_ = s_tail_bound_;

  sq_sum_ = sq_sum.value() + l_tail[2];
  sq_tail_bound_ = 1e-12 + (std::log(X) + 1.0) / (X * X) +
                   prime_log_zeta(2.0).error_bound;

  SeriesValue g = euler_gamma_series(100'000);
  gamma_ = g.value;
  gamma_err_ = g.error_bound;

  uint64_t zeta_terms = std::min<uint64_t>(std::max<uint64_t>(cutoff_, 1000), 100'000);
  SeriesValue z2 = zeta_series(2.0, zeta_terms);
  SeriesValue z3 = zeta_series(3.0, zeta_terms);
  SeriesValue z6 = zeta_series(6.0, zeta_terms);
  zeta_ratio_ = z2.value * z3.value / z6.value;
  zeta_ratio_err_ = zeta_ratio_ * (z2.error_bound / z2.value +
                                   z3.error_bound / z3.value +
                                   z6.error_bound / z6.value);
}

void ConstantsEngine::require_coprime(int64_t a, uint64_t r) const {
  if (a == 0) throw std::domain_error("constants: a must be nonzero");
  if (r == 0) throw std::domain_error("constants: r must be positive");
  if (gcd_u64(abs_u64(a), r) != 1)
    throw std::domain_error("constants: a and r must be coprime");
}

Rational ConstantsEngine::c1_rational(int64_t a, uint64_t r) const {
  require_coprime(a, r);
  Rational rat(1);
  for (const auto& pp : factorize(abs_u64(a)).factors) {
    Rational::Int p = pp.prime;
    rat *= Rational((p - 1) * (p - 1), p * p - p + 1);
  }
  for (const auto& pp : factorize(r).factors) {
    Rational::Int p = pp.prime;
    rat *= Rational(p * p, p * p - p + 1);
  }
  return rat;
}

ConstantValue ConstantsEngine::c1(int64_t a, uint64_t r) const {
  require_coprime(a, r);
  double rat = c1_rational(a, r).to_double();
  ConstantValue v;
  v.kind = ConstantKind::kC1;
  v.a = a;
  v.r = r;
  v.value = z_truncated_ * rat;
  v.cutoff = cutoff_;
  v.tail_bound = z_tail_bound_ * rat;
  return v;
}

ConstantValue ConstantsEngine::c2(int64_t a, uint64_t r) const {
  ConstantValue one = c1(a, r);
  // bracket = gamma - S + sum_{p|a} w(p) log p - sum_{p|r} v(p) log p,
  // w(p) = p^2/((p-1)(p^2-p+1)), v(p) = (p-1)p/(p^2-p+1).
  double bracket = gamma_ - s_truncated_;
  for (const auto& pp : factorize(abs_u64(a)).factors) {
    double p = static_cast<double>(pp.prime);
    bracket += p * p / ((p - 1.0) * (p * p - p + 1.0)) * std::log(p);
  }
  for (const auto& pp : factorize(r).factors) {
    double p = static_cast<double>(pp.prime);
    bracket -= (p - 1.0) * p / (p * p - p + 1.0) * std::log(p);
  }
  ConstantValue v;
  v.kind = ConstantKind::kC2;
  v.a = a;
  v.r = r;
  v.value = one.value * bracket;
  v.cutoff = cutoff_;
  v.tail_bound = std::fabs(bracket) * one.tail_bound +
                 std::fabs(one.value) * (s_tail_bound_ + gamma_err_);
  return v;
}

ConstantValue ConstantsEngine::c3(int64_t a, uint64_t r) const {
  ConstantValue two = c2(a, r);
  ConstantValue one = c1(a, r);
  ConstantValue v;
  v.kind = ConstantKind::kC3;
  v.a = a;
  v.r = r;
  v.value = two.value - one.value;  // C3 := C2 - C1, exactly as computed
  v.cutoff = cutoff_;
  v.tail_bound = two.tail_bound + one.tail_bound;
  return v;
}

ConstantValue ConstantsEngine::c5(uint64_t r) const {
  if (r == 0) throw std::domain_error("constants: r must be positive");
  double extra = 0.0;
  for (const auto& pp : factorize(r).factors) {
    double p = static_cast<double>(pp.prime);
    extra += std::log(p) / p;
  }
  ConstantValue v;
  v.kind = ConstantKind::kC5;
  v.a = 1;
  v.r = r;
  v.value = 0.5 * (std::log(2.0 * std::numbers::pi) + 1.0 + gamma_ +
                   phi_sum_ + extra);
  v.cutoff = cutoff_;
  v.tail_bound = 0.5 * (phi_tail_bound_ + gamma_err_);
  return v;
}

ConstantValue ConstantsEngine::c6() const {
  ConstantValue five = c5(1);
  ConstantValue v;
  v.kind = ConstantKind::kC6;
  v.a = 1;
  v.r = 1;
  v.value = five.value + 0.5 + 0.5 * sq_sum_;
  v.cutoff = cutoff_;
  v.tail_bound = five.tail_bound + 0.5 * sq_tail_bound_;
  return v;
}

ConstantValue ConstantsEngine::gamma() const {
  return {ConstantKind::kGamma, 1, 1, gamma_, cutoff_, gamma_err_};
}

ConstantValue ConstantsEngine::zeta_ratio() const {
  return {ConstantKind::kZetaRatio, 1, 1, zeta_ratio_, cutoff_, zeta_ratio_err_};
}

ConstantValue ConstantsEngine::prime_sum_phi() const {
  return {ConstantKind::kPrimeSumPhi, 1, 1, phi_sum_, cutoff_, phi_tail_bound_};
}

ConstantValue ConstantsEngine::prime_sum_sq() const {
  return {ConstantKind::kPrimeSumSq, 1, 1, sq_sum_, cutoff_, sq_tail_bound_};
}

ConstantFamily ConstantsEngine::family(int64_t a, uint64_t r) const {
  require_coprime(a, r);
  ConstantFamily fam;
  fam.c1 = c1(a, r);
  fam.c2 = c2(a, r);
  fam.c3 = c3(a, r);
  fam.c5 = c5(r);
  return fam;
}

}  // namespace bfilab
