#ifndef BFILAB_CACHE_HPP
#define BFILAB_CACHE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfilab/sieve.hpp"

namespace bfilab {

// Binary sieve-cache file layout (little endian):
//   magic   "BFILAB1"            7 bytes
//   version u32                  currently 1
//   lo, hi  u64, u64             half-open range
//   checksum u64                 FNV-1a of the payload bytes
//   payload:
//     prime flag words  u64 x ceil(width/64)   bit i = (lo+i) prime
//     record count      u32
//     records           (value u64, prime u64, exp u32) per proper p^e
inline constexpr char kCacheMagic[7] = {'B', 'F', 'I', 'L', 'A', 'B', '1'};
inline constexpr uint32_t kCacheVersion = 1;

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 14695981039346656037ULL);

std::string cache_file_name(uint64_t lo, uint64_t hi);

// Serializes the segment's exact fields (flags + prime-power records);
// lambda values are re-derived on load, so a cached segment is byte-for-byte
// equivalent to a freshly sieved one.
void write_segment_cache(const std::string& path, const SieveSegment& seg);

// Returns the cached segment, or nullopt when the file is missing. A present
// but corrupt file (bad magic, version, range, or checksum) is an invariant
// breach and throws InvariantError naming the failure.
std::optional<SieveSegment> read_segment_cache(const std::string& path,
                                               uint64_t lo, uint64_t hi);

struct CacheReport {
  std::string action;
  std::vector<std::string> files;
  uint64_t lo = 0;
  uint64_t hi = 0;
  bool ok = true;
  std::string detail;
};

// build: sieves [lo, hi) in chunk-aligned pieces and writes one file per
// chunk (idempotent; identical bytes on rebuild). verify: re-checksums every
// chunk file for the range. purge: removes them.
CacheReport cache_manage(const std::string& action, uint64_t lo, uint64_t hi,
                         const std::string& cache_dir);

}  // namespace bfilab

#endif  // BFILAB_CACHE_HPP
