#include "bfilab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bfilab/cache.hpp"
#include "bfilab/errors.hpp"
#include "bfilab/parallel.hpp"

namespace bfilab {

std::vector<uint64_t> primes_up_to(uint64_t limit) {
  std::vector<uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<uint8_t> composite(limit + 1, 0);
  for (uint64_t i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  for (uint64_t i = 2; i <= limit; ++i)
    if (!composite[i]) primes.push_back(i);
  return primes;
}

namespace {

uint64_t isqrt_u64(uint64_t n) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Core marking pass over [lo, hi) given base primes up to sqrt(hi-1).
SieveSegment sieve_segment_core(uint64_t lo, uint64_t hi,
                                const std::vector<uint64_t>& base_primes) {
  SieveSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  const uint64_t width = hi - lo;
  seg.is_prime.assign(width, 1);
  seg.lambda.assign(width, 0.0);
  for (uint64_t n = lo; n < std::min<uint64_t>(hi, 2); ++n)
    seg.is_prime[n - lo] = 0;

  for (uint64_t p : base_primes) {
    if (p * p >= hi) break;
    // Mark composite multiples of p, keeping p itself prime.
    uint64_t start = std::max(p * 2, (lo + p - 1) / p * p);
    for (uint64_t j = start; j < hi; j += p) seg.is_prime[j - lo] = 0;
    // Record proper powers p^e in range.
    uint64_t pe = p * p;
    uint32_t e = 2;
    while (pe < hi) {
      if (pe >= lo) seg.prime_powers.push_back({pe, p, e});
      if (pe > (hi - 1) / p) break;
      pe *= p;
      ++e;
    }
  }
  std::sort(seg.prime_powers.begin(), seg.prime_powers.end(),
            [](const PrimePowerRecord& a, const PrimePowerRecord& b) {
              return a.value < b.value;
            });
  for (uint64_t i = 0; i < width; ++i)
    if (seg.is_prime[i])
      seg.lambda[i] = std::log(static_cast<double>(lo + i));
  for (const auto& rec : seg.prime_powers)
    seg.lambda[rec.value - lo] = std::log(static_cast<double>(rec.prime));
  return seg;
}

}  // namespace

SieveSegment sieve_segment(uint64_t lo, uint64_t hi) {
  if (lo < 1 || lo >= hi) throw std::domain_error("sieve_segment: need 1 <= lo < hi");
  if (hi > kDefaultSieveMax)
    throw ResourceError("sieve_segment: hi exceeds sieve budget 2^40");
  if (hi - lo > kMaxSegmentWidth)
    throw ResourceError("sieve_segment: segment width exceeds memory budget");
  auto base = primes_up_to(isqrt_u64(hi - 1));
  return sieve_segment_core(lo, hi, base);
}

PrimeTable::PrimeTable(uint64_t limit, const std::string& cache_dir)
    : limit_(limit) {
  if (limit_ < 2) throw std::domain_error("PrimeTable: limit must be >= 2");
  if (limit_ > kDefaultSieveMax)
    throw ResourceError("PrimeTable: limit exceeds sieve budget 2^40");
  if (limit_ > (uint64_t(1) << 34))
    throw ResourceError("PrimeTable: limit exceeds desk-scale budget 2^34");

  const uint64_t words = (limit_ >> 6) + 1;
  prime_bits_.assign(words, 0);
  pp_bits_.assign(words, 0);

  auto base = primes_up_to(isqrt_u64(limit_));
  const uint64_t nchunks = (limit_ + kSegmentChunk) / kSegmentChunk;
  std::vector<std::vector<PrimePowerRecord>> chunk_pps(nchunks);

  // Chunks are independent; each writes disjoint bit words because chunk
  // boundaries are multiples of 64.
  parallel_for(nchunks, [&](uint64_t c) {
    uint64_t lo = std::max<uint64_t>(1, c * kSegmentChunk);
    uint64_t hi = std::min(limit_ + 1, (c + 1) * kSegmentChunk);
    if (lo >= hi) return;
    SieveSegment seg;
    bool cached = false;
    if (!cache_dir.empty()) {
      auto loaded = read_segment_cache(
          cache_dir + "/" + cache_file_name(lo, hi), lo, hi);
      if (loaded) {
        seg = std::move(*loaded);
        cached = true;
      }
    }
    if (!cached) seg = sieve_segment_core(lo, hi, base);
    for (uint64_t n = lo; n < hi; ++n)
      if (seg.is_prime[n - lo]) prime_bits_[n >> 6] |= uint64_t(1) << (n & 63);
    for (const auto& rec : seg.prime_powers)
      pp_bits_[rec.value >> 6] |= uint64_t(1) << (rec.value & 63);
    chunk_pps[c] = std::move(seg.prime_powers);
  });

  for (auto& v : chunk_pps)
    for (const auto& rec : v) {
      prime_powers_.push_back(rec);
      pp_base_.emplace(rec.value, rec.prime);
    }
}

}  // namespace bfilab
