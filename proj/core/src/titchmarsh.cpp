#include "bfilab/titchmarsh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bfilab/accumulate.hpp"
#include "bfilab/errors.hpp"
#include "bfilab/parallel.hpp"

namespace bfilab {

std::vector<uint32_t> tau_table(uint64_t limit) {
  std::vector<uint32_t> tau(limit + 1, 0);
  if (limit >= 1) tau[1] = 1;
  std::vector<uint32_t> spf_exp(limit + 1, 0);  // exponent of spf(n) in n
  std::vector<uint32_t> primes;
  for (uint64_t i = 2; i <= limit; ++i) {
    if (tau[i] == 0) {
      tau[i] = 2;
      spf_exp[i] = 1;
      primes.push_back(static_cast<uint32_t>(i));
    }
    for (uint32_t p : primes) {
      uint64_t ip = i * p;
      if (ip > limit) break;
      if (i % p == 0) {
        spf_exp[ip] = spf_exp[i] + 1;
        tau[ip] = tau[i] / (spf_exp[i] + 1) * (spf_exp[i] + 2);
        break;
      }
      spf_exp[ip] = 1;
      tau[ip] = tau[i] * 2;
    }
  }
  return tau;
}

double titchmarsh_sum(const PrimeTable& pt, uint64_t x, uint64_t q, int64_t a,
                      const std::vector<uint32_t>& tau, int threads) {
  if (a == 0) throw std::domain_error("titchmarsh: a must be nonzero");
  if (q == 0) throw std::domain_error("titchmarsh: q must be positive");
  if (gcd_u64(q, abs_u64(a)) != 1)
    throw std::domain_error("titchmarsh: q must be coprime to a");
  const uint64_t aa = abs_u64(a);
  const uint64_t m_min = aa / q + 1;  // m > |a|/q
  const uint64_t m_max = x / q;
  if (m_max < m_min) return 0.0;
  if (tau.size() <= m_max)
    throw std::domain_error("titchmarsh: tau table smaller than x/q");
  // Largest n visited is q*m_max + a.
  int64_t n_top = static_cast<int64_t>(q) * static_cast<int64_t>(m_max) + a;
  if (n_top > 0 && pt.limit() < static_cast<uint64_t>(n_top))
    throw ResourceError("titchmarsh: prime table smaller than q*floor(x/q)+a");

  // Fixed chunking; partial sums folded in chunk order.
  constexpr uint64_t kChunk = 1 << 16;
  const uint64_t count = m_max - m_min + 1;
  const uint64_t nchunks = (count + kChunk - 1) / kChunk;
  std::vector<quad> partial(nchunks, quad(0));
  parallel_for(nchunks, [&](uint64_t c) {
    uint64_t lo = m_min + c * kChunk;
    uint64_t hi = std::min(m_max, lo + kChunk - 1);
    quad acc = 0;
    for (uint64_t m = lo; m <= hi; ++m) {
      int64_t n = static_cast<int64_t>(q * m) + a;
      if (n <= 0) continue;
      uint64_t nu = static_cast<uint64_t>(n);
      if (pt.is_prime(nu))
        acc += std::log(static_cast<double>(nu)) * quad(tau[m]);
      else if (pt.is_proper_prime_power(nu))
        acc += std::log(static_cast<double>(pt.prime_power_base(nu))) *
               quad(tau[m]);
    }
    partial[c] = acc;
  }, threads);

  quad total = 0;
  for (const quad& p : partial) total += p;
  return static_cast<double>(total);
}

double titchmarsh_sum(const PrimeTable& pt, uint64_t x, uint64_t q, int64_t a,
                      int threads) {
  auto tau = tau_table(x / q);
  return titchmarsh_sum(pt, x, q, a, tau, threads);
}

double titchmarsh_main_term(const ConstantsEngine& constants, uint64_t x,
                            uint64_t q, int64_t a) {
  const double xd = static_cast<double>(x);
  const double qd = static_cast<double>(q);
  const double radical = static_cast<double>(factorize(q).radical);
  const double c1 = constants.c1_value(a, q);
  const double c2 = constants.c2_value(a, q);
  // log(q'^2/(e q)) = 2 log q' - 1 - log q
  const double log_term = 2.0 * std::log(radical) - 1.0 - std::log(qd);
  return xd / qd * (c1 * std::log(xd) + 2.0 * c2 + c1 * log_term);
}

TitchmarshRow titchmarsh_row(const PrimeTable& pt,
                             const ConstantsEngine& constants, uint64_t x,
                             uint64_t q, int64_t a,
                             const std::vector<uint32_t>& tau, int threads) {
  TitchmarshRow row;
  row.x = x;
  row.q = q;
  row.a = a;
  row.sum = titchmarsh_sum(pt, x, q, a, tau, threads);
  row.main_term = titchmarsh_main_term(constants, x, q, a);
  row.error = row.sum - row.main_term;
  return row;
}

BvTitchmarshTable bv_titchmarsh_table(const PrimeTable& pt,
                                      const ConstantsEngine& constants,
                                      uint64_t x, uint64_t q_max, int64_t a,
                                      bool use_global_tau, bool override_guard,
                                      int threads) {
  if (q_max == 0) throw std::domain_error("bv table: q_max must be positive");
  const double guard = std::pow(static_cast<double>(x), 0.1);
  if (static_cast<double>(q_max) > guard && !override_guard)
    throw std::domain_error(
        "bv table: q_max exceeds x^(1/10); pass override to proceed");

  BvTitchmarshTable table;
  const uint64_t aa = abs_u64(a);
  std::vector<uint32_t> global_tau;
  if (use_global_tau) global_tau = tau_table(x);

  quad aggregate = 0;
  for (uint64_t q = 1; q <= q_max; ++q) {
    if (gcd_u64(q, aa) != 1) {
      ++table.skipped;
      continue;
    }
    TitchmarshRow row;
    if (use_global_tau) {
      row = titchmarsh_row(pt, constants, x, q, a, global_tau, threads);
    } else {
      auto tau = tau_table(x / q);
      row = titchmarsh_row(pt, constants, x, q, a, tau, threads);
    }
    aggregate += std::fabs(row.error);
    table.rows.push_back(row);
  }
  table.aggregate = static_cast<double>(aggregate);
  const double logx = std::log(static_cast<double>(x));
  for (int A = 1; A <= 3; ++A)
    table.x_over_logA[A - 1] =
        static_cast<double>(x) / std::pow(logx, static_cast<double>(A));
  return table;
}

}  // namespace bfilab
