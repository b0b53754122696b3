#include "bfilab/cache.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "bfilab/errors.hpp"

namespace bfilab {

namespace fs = std::filesystem;

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::string cache_file_name(uint64_t lo, uint64_t hi) {
  return "seg_" + std::to_string(lo) + "_" + std::to_string(hi) + ".bfc";
}

namespace {

void put_u32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}
uint32_t get_u32(const unsigned char* p) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(p[i]) << (8 * i);
  return v;
}
uint64_t get_u64(const unsigned char* p) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(p[i]) << (8 * i);
  return v;
}

std::string payload_bytes(const SieveSegment& seg) {
  std::string payload;
  const uint64_t width = seg.width();
  const uint64_t words = (width + 63) / 64;
  std::vector<uint64_t> flags(words, 0);
  for (uint64_t i = 0; i < width; ++i)
    if (seg.is_prime[i]) flags[i >> 6] |= uint64_t(1) << (i & 63);
  payload.reserve(words * 8 + 4 + seg.prime_powers.size() * 20);
  for (uint64_t w : flags) put_u64(payload, w);
  put_u32(payload, static_cast<uint32_t>(seg.prime_powers.size()));
  for (const auto& rec : seg.prime_powers) {
    put_u64(payload, rec.value);
    put_u64(payload, rec.prime);
    put_u32(payload, rec.exp);
  }
  return payload;
}

}  // namespace

void write_segment_cache(const std::string& path, const SieveSegment& seg) {
  std::string payload = payload_bytes(seg);
  std::string header;
  header.append(kCacheMagic, sizeof(kCacheMagic));
  put_u32(header, kCacheVersion);
  put_u64(header, seg.lo);
  put_u64(header, seg.hi);
  put_u64(header, fnv1a64(payload.data(), payload.size()));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cache: cannot open for write: " + path);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw std::runtime_error("cache: write failed: " + path);
}

std::optional<SieveSegment> read_segment_cache(const std::string& path,
                                               uint64_t lo, uint64_t hi) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const size_t header_size = sizeof(kCacheMagic) + 4 + 8 + 8 + 8;
  if (bytes.size() < header_size)
    throw InvariantError("sieve cache invariant breach: truncated header in " + path);
  const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (std::memcmp(p, kCacheMagic, sizeof(kCacheMagic)) != 0)
    throw InvariantError("sieve cache invariant breach: bad magic in " + path);
  p += sizeof(kCacheMagic);
  uint32_t version = get_u32(p);
  p += 4;
  if (version != kCacheVersion)
    throw InvariantError("sieve cache invariant breach: unsupported version in " + path);
  uint64_t file_lo = get_u64(p);
  p += 8;
  uint64_t file_hi = get_u64(p);
  p += 8;
  if (file_lo != lo || file_hi != hi)
    throw InvariantError("sieve cache invariant breach: range mismatch in " + path);
  uint64_t checksum = get_u64(p);
  p += 8;

  const char* payload = bytes.data() + header_size;
  const size_t payload_len = bytes.size() - header_size;
  if (fnv1a64(payload, payload_len) != checksum)
    throw InvariantError("sieve cache invariant breach: checksum mismatch in " + path);

  const uint64_t width = hi - lo;
  const uint64_t words = (width + 63) / 64;
  if (payload_len < words * 8 + 4)
    throw InvariantError("sieve cache invariant breach: truncated payload in " + path);

  SieveSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  seg.is_prime.assign(width, 0);
  seg.lambda.assign(width, 0.0);
  const unsigned char* q = reinterpret_cast<const unsigned char*>(payload);
  for (uint64_t i = 0; i < width; ++i) {
    uint64_t word = get_u64(q + (i >> 6) * 8);
    seg.is_prime[i] = (word >> (i & 63)) & 1;
  }
  q += words * 8;
  uint32_t count = get_u32(q);
  q += 4;
  if (payload_len != words * 8 + 4 + uint64_t(count) * 20)
    throw InvariantError("sieve cache invariant breach: payload size mismatch in " + path);
  seg.prime_powers.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    PrimePowerRecord rec;
    rec.value = get_u64(q);
    rec.prime = get_u64(q + 8);
    rec.exp = get_u32(q + 16);
    q += 20;
    seg.prime_powers.push_back(rec);
  }
  // Lambda values are re-derived, keeping cached and fresh segments identical.
  for (uint64_t i = 0; i < width; ++i)
    if (seg.is_prime[i]) seg.lambda[i] = std::log(static_cast<double>(lo + i));
  for (const auto& rec : seg.prime_powers)
    seg.lambda[rec.value - lo] = std::log(static_cast<double>(rec.prime));
  return seg;
}

CacheReport cache_manage(const std::string& action, uint64_t lo, uint64_t hi,
                         const std::string& cache_dir) {
  if (cache_dir.empty())
    throw std::domain_error("cache: cache directory not set");
  if (action != "purge" && (lo < 1 || lo >= hi))
    throw std::domain_error("cache: need 1 <= lo < hi");
  if (hi > kDefaultSieveMax)
    throw ResourceError("cache: hi exceeds sieve budget 2^40");

  CacheReport report;
  report.action = action;
  report.lo = lo;
  report.hi = hi;

  // Chunk-aligned pieces matching what PrimeTable requests: the range is
  // rounded out to kSegmentChunk boundaries (except the final end, which
  // stays at hi so a PrimeTable with limit = hi - 1 finds exact matches).
  auto chunk_ranges = [&]() {
    std::vector<std::pair<uint64_t, uint64_t>> ranges;
    uint64_t first = lo / kSegmentChunk;
    uint64_t last = (hi - 1) / kSegmentChunk;
    for (uint64_t c = first; c <= last; ++c) {
      uint64_t clo = std::max<uint64_t>(1, c * kSegmentChunk);
      uint64_t chi = std::min(hi, (c + 1) * kSegmentChunk);
      if (clo < chi) ranges.emplace_back(clo, chi);
    }
    return ranges;
  };

  if (action == "build") {
    fs::create_directories(cache_dir);
    for (auto [clo, chi] : chunk_ranges()) {
      SieveSegment seg = sieve_segment(clo, chi);
      std::string path = cache_dir + "/" + cache_file_name(clo, chi);
      write_segment_cache(path, seg);
      report.files.push_back(path);
    }
    report.detail = "built " + std::to_string(report.files.size()) + " file(s)";
  } else if (action == "verify") {
    size_t missing = 0;
    for (auto [clo, chi] : chunk_ranges()) {
      std::string path = cache_dir + "/" + cache_file_name(clo, chi);
      auto seg = read_segment_cache(path, clo, chi);  // throws on corruption
      if (!seg) {
        ++missing;
        report.ok = false;
        report.detail += (report.detail.empty() ? "" : "; ") + ("absent: " + path);
      } else {
        report.files.push_back(path);
      }
    }
    if (report.ok) report.detail = "verified " + std::to_string(report.files.size()) + " file(s)";
  } else if (action == "purge") {
    if (fs::exists(cache_dir))
      for (const auto& entry : fs::directory_iterator(cache_dir)) {
        if (!entry.is_regular_file()) continue;
        auto name = entry.path().filename().string();
        if (name.rfind("seg_", 0) == 0 && name.size() > 4 &&
            name.substr(name.size() - 4) == ".bfc") {
          fs::remove(entry.path());
          report.files.push_back(entry.path().string());
        }
      }
    report.detail = "purged " + std::to_string(report.files.size()) + " file(s)";
  } else {
    throw std::domain_error("cache: unknown action '" + action + "'");
  }
  return report;
}

}  // namespace bfilab
