#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace revprime {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition does not hold (bad base, r outside its digit
// window, alpha off its arc, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The request exceeds a memory or length ceiling.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::uint64_t bytes_required)
      : Error(what), bytes_required_(bytes_required) {}
  explicit ResourceError(const std::string& what) : Error(what) {}

  std::uint64_t bytes_required() const noexcept { return bytes_required_; }

 private:
  std::uint64_t bytes_required_ = 0;
};

// Sieve cache file problems. Each failure mode is its own type so callers can
// tell a stale file from a damaged one.
class CacheError : public Error {
 public:
  using Error::Error;
};
class CacheFormatError : public CacheError {
 public:
  using CacheError::CacheError;
};
class CacheVersionError : public CacheError {
 public:
  using CacheError::CacheError;
};
class CacheChecksumError : public CacheError {
 public:
  using CacheError::CacheError;
};

}  // namespace revprime
