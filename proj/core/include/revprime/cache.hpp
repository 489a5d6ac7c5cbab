#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include "revprime/sieve.hpp"

namespace revprime {

// On-disk layout, all integers little-endian:
//   16 bytes  magic "REVPRIME-SIEVE\0\0"
//    4 bytes  version (1)
//    8 bytes  limit
//    8*W      odd bitset words, W = PrimeTable::words_for(limit)
//    8 bytes  FNV-1a 64 over every preceding byte
inline constexpr std::array<char, 16> kCacheMagic = {'R', 'E', 'V', 'P', 'R', 'I', 'M', 'E',
                                                     '-', 'S', 'I', 'E', 'V', 'E', '\0', '\0'};
inline constexpr std::uint32_t kCacheVersion = 1;

std::uint64_t fnv1a64(const unsigned char* data, std::size_t size,
                      std::uint64_t state = 0xcbf29ce484222325ULL) noexcept;

// Writes to a sibling temporary file and renames it into place while holding
// path + ".lock" (created with O_EXCL). Throws CacheError if the lock is held
// by another writer or the file cannot be written.
void cache_store(const std::filesystem::path& path, const PrimeTable& table);

// Throws CacheFormatError (bad magic, short header), CacheVersionError, or
// CacheChecksumError (size disagrees with the header, or digest mismatch).
PrimeTable cache_load(const std::filesystem::path& path);

}  // namespace revprime
