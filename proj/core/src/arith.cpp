#include "bfilab/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bfilab {

namespace {

void finalize(Factorization& f) {
  f.radical = 1;
  f.omega = static_cast<uint32_t>(f.factors.size());
  f.mu = 1;
  f.phi = 1;
  f.tau = 1;
  uint64_t rest = f.n;
  for (const auto& pp : f.factors) {
    f.radical *= pp.prime;
    f.tau *= pp.exp + 1;
    if (pp.exp >= 2)
      f.mu = 0;
    else
      f.mu = -f.mu;
    // phi(p^e) = p^(e-1) * (p-1)
    uint64_t pe1 = 1;
    for (uint32_t i = 1; i < pp.exp; ++i) pe1 *= pp.prime;
    f.phi *= pe1 * (pp.prime - 1);
    (void)rest;
  }
}

}  // namespace

Factorization factorize(uint64_t n) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  Factorization f;
  f.n = n;
  if (n == 1) {
    finalize(f);
    return f;
  }
  uint64_t m = n;
  auto strip = [&](uint64_t p) {
    if (m % p == 0) {
      uint32_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      f.factors.push_back({p, e});
    }
  };
  strip(2);
  strip(3);
  strip(5);
  // 2,3,5 wheel: candidate divisors 7, 11, 13, 17, 19, 23, 29, 31, 37, ...
  static constexpr uint64_t kWheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  uint64_t p = 7;
  int w = 0;
  while (p <= m / p) {
    strip(p);
    p += kWheel[w];
    w = (w + 1) & 7;
  }
  if (m > 1) f.factors.push_back({m, 1});
  finalize(f);
  return f;
}

Factorization merge_factorizations(const Factorization& a,
                                   const Factorization& b) {
  Factorization f;
  f.n = a.n * b.n;
  f.factors.reserve(a.factors.size() + b.factors.size());
  size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    if (a.factors[i].prime == b.factors[j].prime) {
      f.factors.push_back(
          {a.factors[i].prime, a.factors[i].exp + b.factors[j].exp});
      ++i;
      ++j;
    } else if (a.factors[i].prime < b.factors[j].prime) {
      f.factors.push_back(a.factors[i++]);
    } else {
      f.factors.push_back(b.factors[j++]);
    }
  }
  while (i < a.factors.size()) f.factors.push_back(a.factors[i++]);
  while (j < b.factors.size()) f.factors.push_back(b.factors[j++]);
  finalize(f);
  return f;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

uint64_t abs_u64(int64_t a) {
  return a < 0 ? ~static_cast<uint64_t>(a) + 1 : static_cast<uint64_t>(a);
}

uint64_t phi_from_factors(const Factorization& f) { return f.phi; }

std::vector<uint64_t> divisor_list(const Factorization& f) {
  std::vector<uint64_t> divs{1};
  for (const auto& pp : f.factors) {
    size_t count = divs.size();
    uint64_t pe = 1;
    for (uint32_t e = 1; e <= pp.exp; ++e) {
      pe *= pp.prime;
      for (size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<uint64_t> divisor_list(uint64_t n) {
  return divisor_list(factorize(n));
}

uint64_t coprime_divisor_count(const Factorization& f, uint64_t cap,
                               int64_t a) {
  if (a == 0) throw std::domain_error("coprime_divisor_count: a must be nonzero");
  const uint64_t aa = abs_u64(a);
  // Primes shared with |a| can never appear in a counted divisor, so only
  // the remaining prime powers are expanded.
  std::vector<PrimePower> usable;
  usable.reserve(f.factors.size());
  for (const auto& pp : f.factors)
    if (aa % pp.prime != 0) usable.push_back(pp);

  uint64_t count = 0;
  // DFS over exponent choices, pruning branches that exceed cap.
  auto rec = [&](auto&& self, size_t idx, uint64_t d) -> void {
    if (idx == usable.size()) {
      ++count;
      return;
    }
    const auto& pp = usable[idx];
    uint64_t v = d;
    self(self, idx + 1, v);
    for (uint32_t e = 1; e <= pp.exp; ++e) {
      if (v > cap / pp.prime) return;
      v *= pp.prime;
      if (v > cap) return;
      self(self, idx + 1, v);
    }
  };
  if (cap >= 1) rec(rec, 0, 1);
  return count;
}

uint64_t coprime_divisor_count(uint64_t n, uint64_t cap, int64_t a) {
  return coprime_divisor_count(factorize(n), cap, a);
}

SpfTable::SpfTable(uint32_t limit) : limit_(limit), spf_(size_t(limit) + 1, 0) {
  if (limit_ >= 1) spf_[1] = 1;
  for (uint32_t i = 2; i <= limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (uint32_t p : primes_) {
      if (p > spf_[i] || uint64_t(p) * i > limit_) break;
      spf_[p * uint64_t(i)] = p;
    }
  }
}

Factorization SpfTable::factorize(uint32_t n) const {
  if (n == 0) throw std::domain_error("SpfTable::factorize: n must be positive");
  if (n > limit_) throw std::domain_error("SpfTable::factorize: n beyond table");
  Factorization f;
  f.n = n;
  while (n > 1) {
    uint32_t p = spf_[n];
    uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  // spf factors come out in increasing order already.
  uint64_t radical = 1, phi = 1, tau = 1;
  int mu = 1;
  for (const auto& pp : f.factors) {
    radical *= pp.prime;
    tau *= pp.exp + 1;
    mu = pp.exp >= 2 ? 0 : -mu;
    uint64_t pe1 = 1;
    for (uint32_t i = 1; i < pp.exp; ++i) pe1 *= pp.prime;
    phi *= pe1 * (pp.prime - 1);
  }
  f.radical = radical;
  f.omega = static_cast<uint32_t>(f.factors.size());
  f.mu = mu;
  f.phi = phi;
  f.tau = tau;
  return f;
}

uint64_t SpfTable::phi(uint32_t n) const { return factorize(n).phi; }

}  // namespace bfilab
