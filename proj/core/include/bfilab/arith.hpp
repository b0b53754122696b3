#ifndef BFILAB_ARITH_HPP
#define BFILAB_ARITH_HPP

#include <cstdint>
#include <vector>

namespace bfilab {

struct PrimePower {
  uint64_t prime = 0;
  uint32_t exp = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Full multiplicative profile of an integer: prime factorization in
// increasing prime order plus the derived values used throughout the
// project (radical, omega, mu, phi, tau).
struct Factorization {
  uint64_t n = 1;
  std::vector<PrimePower> factors;
  uint64_t radical = 1;
  uint32_t omega = 0;
  int mu = 1;  // 0 if any exponent >= 2, else (-1)^omega
  uint64_t phi = 1;
  uint64_t tau = 1;

  bool squarefree() const { return mu != 0; }
};

// Trial-division factorization (2,3,5 wheel). n = 0 is a domain error.
Factorization factorize(uint64_t n);

// Merged factorization of a*b given the factorizations of a and b.
Factorization merge_factorizations(const Factorization& a,
                                   const Factorization& b);

uint64_t gcd_u64(uint64_t a, uint64_t b);

// |a| as uint64_t, valid for the full int64_t range.
uint64_t abs_u64(int64_t a);

// phi(n) for n given by its factorization.
uint64_t phi_from_factors(const Factorization& f);

// All divisors of n in strictly increasing order (length tau(n)).
std::vector<uint64_t> divisor_list(const Factorization& f);
std::vector<uint64_t> divisor_list(uint64_t n);

// #{d : d | n, d <= cap, gcd(d, |a|) = 1}.
uint64_t coprime_divisor_count(const Factorization& f, uint64_t cap, int64_t a);
uint64_t coprime_divisor_count(uint64_t n, uint64_t cap, int64_t a);

// Smallest-prime-factor table over [0, limit], built by a linear sieve.
// Gives O(log n) factorizations for bulk per-n work.
class SpfTable {
 public:
  explicit SpfTable(uint32_t limit);

  uint32_t limit() const { return limit_; }
  uint32_t spf(uint32_t n) const { return spf_[n]; }

  Factorization factorize(uint32_t n) const;
  uint64_t phi(uint32_t n) const;

  const std::vector<uint32_t>& primes() const { return primes_; }

 private:
  uint32_t limit_;
  std::vector<uint32_t> spf_;
  std::vector<uint32_t> primes_;
};

}  // namespace bfilab

#endif  // BFILAB_ARITH_HPP
