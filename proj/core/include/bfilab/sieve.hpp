#ifndef BFILAB_SIEVE_HPP
#define BFILAB_SIEVE_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "bfilab/arith.hpp"

namespace bfilab {

inline constexpr uint64_t kDefaultSieveMax = uint64_t(1) << 40;
inline constexpr uint64_t kMaxSegmentWidth = uint64_t(1) << 28;
inline constexpr uint64_t kSegmentChunk = uint64_t(1) << 20;

// Record of a proper prime power p^e (e >= 2) inside a segment; primes in
// the segment are carried by the is_prime flags, so together these determine
// every von Mangoldt value exactly.
struct PrimePowerRecord {
  uint64_t value = 0;  // p^e
  uint64_t prime = 0;
  uint32_t exp = 0;
  friend bool operator==(const PrimePowerRecord&,
                         const PrimePowerRecord&) = default;
};

// Von Mangoldt values and prime flags over the half-open interval [lo, hi).
// lambda[i] corresponds to n = lo + i and equals log p exactly when n = p^e,
// else 0. The (p, e) structure is retained so tests can re-derive the logs.
struct SieveSegment {
  uint64_t lo = 0;
  uint64_t hi = 0;
  std::vector<double> lambda;
  std::vector<uint8_t> is_prime;
  std::vector<PrimePowerRecord> prime_powers;  // increasing value

  uint64_t width() const { return hi - lo; }
};

// Sieves [lo, hi). Requires 1 <= lo < hi <= kDefaultSieveMax and width within
// the memory budget. Results are independent of internal subdivision.
SieveSegment sieve_segment(uint64_t lo, uint64_t hi);

// Simple sieve: all primes <= limit.
std::vector<uint64_t> primes_up_to(uint64_t limit);

// Primality flags and von Mangoldt structure over [0, limit], the read-only
// backing store for the progression tallies. Built from kSegmentChunk-sized
// segments; when cache_dir is nonempty, chunk-aligned cache files are used
// if present (and trusted only after a checksum match).
class PrimeTable {
 public:
  explicit PrimeTable(uint64_t limit, const std::string& cache_dir = "");

  uint64_t limit() const { return limit_; }

  bool is_prime(uint64_t n) const {
    return n <= limit_ && (prime_bits_[n >> 6] >> (n & 63)) & 1;
  }
  bool is_proper_prime_power(uint64_t n) const {
    return n <= limit_ && (pp_bits_[n >> 6] >> (n & 63)) & 1;
  }

  // log p when n = p^e, else 0. For primes this is log n.
  double lambda(uint64_t n) const {
    if (is_prime(n)) return std::log(static_cast<double>(n));
    if (is_proper_prime_power(n))
      return std::log(static_cast<double>(pp_base_.at(n)));
    return 0.0;
  }

  uint64_t prime_power_base(uint64_t n) const { return pp_base_.at(n); }

  const std::vector<PrimePowerRecord>& prime_powers() const {
    return prime_powers_;
  }

 private:
  uint64_t limit_;
  std::vector<uint64_t> prime_bits_;
  std::vector<uint64_t> pp_bits_;
  std::vector<PrimePowerRecord> prime_powers_;
  std::unordered_map<uint64_t, uint64_t> pp_base_;
};

}  // namespace bfilab

#endif  // BFILAB_SIEVE_HPP
