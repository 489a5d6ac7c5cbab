#include "revprime/cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "revprime/error.hpp"

namespace revprime {
namespace {

constexpr std::size_t kHeaderBytes = 16 + 4 + 8;

void put_le(std::vector<unsigned char>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

class LockFile {
 public:
  explicit LockFile(std::filesystem::path path) : path_(std::move(path)) {
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) {
      const int err = errno;
      if (err == EEXIST) throw CacheError("cache lock " + path_.string() + " is held by another writer");
      throw CacheError("cannot create cache lock " + path_.string() + ": " + std::strerror(err));
    }
  }
  ~LockFile() {
    ::close(fd_);
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  LockFile(const LockFile&) = delete;
  LockFile& operator=(const LockFile&) = delete;

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

}  // namespace

std::uint64_t fnv1a64(const unsigned char* data, std::size_t size, std::uint64_t state) noexcept {
  for (std::size_t i = 0; i < size; ++i) {
    state ^= data[i];
    state *= 0x100000001b3ULL;
  }
  return state;
}

void cache_store(const std::filesystem::path& path, const PrimeTable& table) {
  std::vector<unsigned char> bytes;
  bytes.reserve(kHeaderBytes + table.words().size() * 8 + 8);
  bytes.insert(bytes.end(), kCacheMagic.begin(), kCacheMagic.end());
  put_le(bytes, kCacheVersion, 4);
  put_le(bytes, table.limit(), 8);
  for (auto w : table.words()) put_le(bytes, w, 8);
  put_le(bytes, fnv1a64(bytes.data(), bytes.size()), 8);

  LockFile lock(path.string() + ".lock");
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CacheError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw CacheError("cannot move cache file into place at " + path.string());
  }
}

PrimeTable cache_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (bytes.size() < kCacheMagic.size() ||
      std::memcmp(bytes.data(), kCacheMagic.data(), kCacheMagic.size()) != 0) {
    throw CacheFormatError(path.string() + " is not a sieve cache file (bad magic)");
  }
  if (bytes.size() < kHeaderBytes) throw CacheChecksumError(path.string() + " is truncated inside its header");
  const auto version = static_cast<std::uint32_t>(get_le(bytes.data() + 16, 4));
  if (version != kCacheVersion) {
    throw CacheVersionError(path.string() + " has version " + std::to_string(version) + ", expected " +
                            std::to_string(kCacheVersion));
  }
  const std::uint64_t limit = get_le(bytes.data() + 20, 8);
  if (limit < 2 || limit > PrimeTable::kMaxLimit) {
    throw CacheFormatError(path.string() + " declares an out-of-range limit " + std::to_string(limit));
  }
  const std::size_t nwords = PrimeTable::words_for(limit);
  if (bytes.size() != kHeaderBytes + nwords * 8 + 8) {
    throw CacheChecksumError(path.string() + " has " + std::to_string(bytes.size()) +
                             " bytes, header implies " + std::to_string(kHeaderBytes + nwords * 8 + 8));
  }
  const std::size_t body = bytes.size() - 8;
  if (fnv1a64(bytes.data(), body) != get_le(bytes.data() + body, 8)) {
    throw CacheChecksumError(path.string() + " fails its checksum");
  }
  std::vector<std::uint64_t> words(nwords);
  for (std::size_t i = 0; i < nwords; ++i) words[i] = get_le(bytes.data() + kHeaderBytes + 8 * i, 8);
  return PrimeTable(limit, std::move(words));
}

}  // namespace revprime
