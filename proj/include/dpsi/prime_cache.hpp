#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dpsi/prime_table.hpp"

namespace dpsi {

// Binary cache for PrimeTable. Layout (all integers little-endian):
//
//   offset  size  field
//   0       8     magic "DPSIPTBL"
//   8       4     format version (kCacheVersion)
//   12      8     sieve limit
//   20      8     prime count K
//   28      ...   K unsigned LEB128 varints: p_1 - 0, p_2 - p_1, ...
//   ...     16*K  theta prefix: K pairs (value, radius) as IEEE-754 binary64
//   ...     8     FNV-1a 64 hash of every preceding byte
//
// See docs/cache_format.md.
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr char kCacheMagic[8] = {'D', 'P', 'S', 'I', 'P', 'T', 'B', 'L'};

class PrimeTableCodec {
public:
    static std::vector<std::uint8_t> encode(const PrimeTable& table);
    // Throws FormatError on any corruption or version mismatch.
    static PrimeTable decode(const std::vector<std::uint8_t>& bytes);
};

struct CacheInfo {
    std::uint32_t version = 0;
    std::uint64_t limit = 0;
    std::uint64_t count = 0;
    std::uint64_t file_size = 0;
};

void write_cache(const std::filesystem::path& file, const PrimeTable& table);
PrimeTable read_cache(const std::filesystem::path& file);
// Header only; nullopt when the file is missing or not a cache file.
std::optional<CacheInfo> inspect_cache(const std::filesystem::path& file);

std::filesystem::path cache_file(const std::filesystem::path& dir);

// Reuses the cached table when it covers `limit` (truncating it), and
// rebuilds and rewrites the cache when it is missing, stale, unreadable or
// too small.
PrimeTable load_or_build(const std::filesystem::path& dir, std::uint64_t limit,
                         const SieveOptions& options = {});

} // namespace dpsi
