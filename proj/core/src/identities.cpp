#include "bfilab/identities.hpp"

#include <stdexcept>

namespace bfilab {

namespace {

// f extended multiplicatively / g additively from prime values to a
// squarefree divisor given by a prime subset mask.
Rational mult_value(const std::vector<std::pair<uint64_t, Rational>>& fv,
                    uint32_t mask) {
  Rational out(1);
  for (uint32_t i = 0; i < fv.size(); ++i)
    if (mask & (1u << i)) out *= fv[i].second;
  return out;
}

Rational add_value(const std::vector<std::pair<uint64_t, Rational>>& gv,
                   uint32_t mask) {
  Rational out(0);
  for (uint32_t i = 0; i < gv.size(); ++i)
    if (mask & (1u << i)) out += gv[i].second;
  return out;
}

// Per-prime rational building blocks of the singular series:
//   f1(p) = (p-1)^2/(p^2-p+1)   (C1(p)/Z)
//   w(p)  = p^2/((p-1)(p^2-p+1))  log-p coefficient from p | a
//   v(p)  = (p-1)p/(p^2-p+1)      log-p coefficient from p | r
Rational f1_of(uint64_t p) {
  Rational::Int q = p;
  return Rational((q - 1) * (q - 1), q * q - q + 1);
}
Rational w_of(uint64_t p) {
  Rational::Int q = p;
  return Rational(q * q, (q - 1) * (q * q - q + 1));
}
Rational v_of(uint64_t p) {
  Rational::Int q = p;
  return Rational((q - 1) * q, q * q - q + 1);
}

}  // namespace

MultAdditiveCheck mult_additive_identity_check(
    uint64_t r, const std::map<uint64_t, Rational>& f,
    const std::map<uint64_t, Rational>& g) {
  if (r == 0) throw std::domain_error("identity check: r must be positive");
  Factorization fr = factorize(r);
  if (!fr.squarefree())
    throw std::domain_error("identity check: r must be squarefree");
  if (fr.omega > 20)
    throw std::domain_error("identity check: too many prime factors");

  std::vector<std::pair<uint64_t, Rational>> fv, gv;
  for (const auto& pp : fr.factors) {
    auto itf = f.find(pp.prime);
    auto itg = g.find(pp.prime);
    if (itf == f.end() || itg == g.end())
      throw std::domain_error("identity check: missing value at a prime of r");
    if (itf->second == Rational(-1))
      throw std::domain_error("identity check: f(p) = -1 hits the formula pole");
    fv.emplace_back(pp.prime, itf->second);
    gv.emplace_back(pp.prime, itg->second);
  }

  MultAdditiveCheck out;
  // LHS: enumerate the 2^omega squarefree divisors.
  Rational lhs(0);
  for (uint32_t mask = 0; mask < (1u << fr.omega); ++mask)
    lhs += mult_value(fv, mask) * add_value(gv, mask);

  // RHS: prod (1 + f(p)) * sum g(p) f(p)/(1 + f(p)).
  Rational prod(1);
  for (const auto& [p, val] : fv) prod *= Rational(1) + val;
  Rational sum(0);
  for (uint32_t i = 0; i < fv.size(); ++i)
    sum += gv[i].second * fv[i].second / (Rational(1) + fv[i].second);
  Rational rhs = prod * sum;

  out.lhs = lhs;
  out.rhs = rhs;
  out.equal = lhs == rhs;
  return out;
}

ConvolutionCheck mobius_convolution_check(int64_t a, uint64_t r, int i) {
  if (i != 1 && i != 2)
    throw std::domain_error("mobius_convolution_check: i must be 1 or 2");
  if (a == 0) throw std::domain_error("mobius_convolution_check: a nonzero");
  if (r == 0) throw std::domain_error("mobius_convolution_check: r positive");
  Factorization fr = factorize(r);
  if (!fr.squarefree())
    throw std::domain_error("mobius_convolution_check: r must be squarefree");
  if (gcd_u64(abs_u64(a), r) != 1)
    throw std::domain_error("mobius_convolution_check: a, r must be coprime");
  if (fr.omega > 20)
    throw std::domain_error("mobius_convolution_check: too many prime factors");

  Factorization fa = factorize(abs_u64(a));

  ConvolutionCheck out;

  // Everything is written relative to the prefactor C1(a) (i = 1) or to the
  // basis {C1(a)*(gamma - S), C1(a)*log p} (i = 2). rho(r) = C1(a,r)/(r C1(a)).
  Rational rho(1);
  for (const auto& pp : fr.factors) {
    Rational::Int p = pp.prime;
    rho *= Rational(p, p * p - p + 1);
  }

  if (i == 1) {
    // LHS: C1(a,r)/(r C1(a)); RHS: sum_{d|r} mu(d) prod_{p|d} f1(p).
    Rational rhs(0);
    for (uint32_t mask = 0; mask < (1u << fr.omega); ++mask) {
      Rational term(__builtin_popcount(mask) % 2 == 0 ? 1 : -1);
      for (uint32_t b = 0; b < fr.omega; ++b)
        if (mask & (1u << b)) term *= f1_of(fr.factors[b].prime);
      rhs += term;
    }
    out.lhs = rho;
    out.rhs = rhs;
    out.equal = out.lhs == out.rhs;
    return out;
  }

  // i = 2. LHS = C2(a,r)/(r C1(a)):
  //   rho(r) * [ (gamma - S) + sum_{p|a} w(p) log p - sum_{p|r} v(p) log p ].
  out.lhs = rho;
  for (const auto& pp : fa.factors)
    out.lhs_logs[pp.prime] = rho * w_of(pp.prime);
  for (const auto& pp : fr.factors)
    out.lhs_logs[pp.prime] = -(rho * v_of(pp.prime));

  // RHS = sum_{d|r} mu(d) C2(ad)/C1(a) with
  // C2(ad)/C1(a) = f1(d) [ (gamma - S) + sum_{p|a} w(p) log p
  //                                    + sum_{p|d} w(p) log p ].
  Rational rhs_unit(0);
  std::map<uint64_t, Rational> rhs_logs;
  for (const auto& pp : fa.factors) rhs_logs[pp.prime] = Rational(0);
  for (const auto& pp : fr.factors) rhs_logs[pp.prime] = Rational(0);
  for (uint32_t mask = 0; mask < (1u << fr.omega); ++mask) {
    Rational mu(__builtin_popcount(mask) % 2 == 0 ? 1 : -1);
    Rational f1d(1);
    for (uint32_t b = 0; b < fr.omega; ++b)
      if (mask & (1u << b)) f1d *= f1_of(fr.factors[b].prime);
    Rational coef = mu * f1d;
    rhs_unit += coef;
    for (const auto& pp : fa.factors)
      rhs_logs[pp.prime] += coef * w_of(pp.prime);
    for (uint32_t b = 0; b < fr.omega; ++b)
      if (mask & (1u << b))
        rhs_logs[fr.factors[b].prime] += coef * w_of(fr.factors[b].prime);
  }
  out.rhs = rhs_unit;
  out.rhs_logs = std::move(rhs_logs);
  // Fill any missing lhs keys with zeros so the maps are comparable.
  for (const auto& [p, val] : out.rhs_logs)
    out.lhs_logs.try_emplace(p, Rational(0));
  for (const auto& [p, val] : out.lhs_logs)
    out.rhs_logs.try_emplace(p, Rational(0));

  out.equal = out.lhs == out.rhs && out.lhs_logs == out.rhs_logs;
  return out;
}

}  // namespace bfilab
