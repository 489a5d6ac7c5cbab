#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "revprime/digits.hpp"

namespace revprime {

// Primality of every integer up to limit, one bit per odd number.
// Bit j of the word array stands for the odd number 2j + 1; 2 is implicit.
class PrimeTable {
 public:
  static constexpr std::uint64_t kMaxLimit = std::uint64_t{1} << 38;

  PrimeTable() = default;

  // Adopts a word array (used by the cache loader). The array length must
  // match words_for(limit); bits beyond limit must be clear.
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> words);

  static std::size_t words_for(std::uint64_t limit) noexcept {
    const std::uint64_t odd_count = (limit + 1) / 2;
    return static_cast<std::size_t>((odd_count + 63) / 64);
  }

  std::uint64_t limit() const noexcept { return limit_; }

  bool is_prime(std::uint64_t n) const noexcept {
    if (n < 3) return n == 2 && limit_ >= 2;
    if ((n & 1) == 0 || n > limit_) return false;
    const std::uint64_t j = n >> 1;
    return (words_[j >> 6] >> (j & 63)) & 1;
  }

  // pi(limit).
  std::uint64_t count() const noexcept;

  // Calls fn(p) for each prime lo <= p <= min(hi, limit), ascending.
  template <class Fn>
  void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const {
    if (hi > limit_) hi = limit_;
    if (lo <= 2 && hi >= 2) fn(std::uint64_t{2});
    if (hi < 3) return;
    const std::uint64_t first = std::max<std::uint64_t>(lo, 3) >> 1;
    const std::uint64_t last = (hi - 1) >> 1;  // index of the largest odd <= hi
    if (first > last) return;
    for (std::uint64_t w = first >> 6; w <= (last >> 6); ++w) {
      std::uint64_t bits = words_[w];
      if (w == (first >> 6)) bits &= ~std::uint64_t{0} << (first & 63);
      if (w == (last >> 6) && (last & 63) != 63) bits &= (std::uint64_t{1} << ((last & 63) + 1)) - 1;
      while (bits != 0) {
        const int t = std::countr_zero(bits);
        fn(((w << 6) + static_cast<std::uint64_t>(t)) * 2 + 1);
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::uint64_t> primes(std::uint64_t lo, std::uint64_t hi) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const PrimeTable&, const PrimeTable&) = default;

 private:
  friend PrimeTable sieve_primes(std::uint64_t, unsigned);
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> words_;
};

// Segmented Eratosthenes over odd numbers; segments are sieved in parallel.
// Requires 2 <= limit <= 2^38; otherwise ResourceError (with the byte count
// the table would need) or DomainError for limit < 2.
PrimeTable sieve_primes(std::uint64_t limit, unsigned threads = 0);

// Process-wide memo of the largest table built so far, optionally backed by a
// directory of cache files. Tables only ever grow; callers receive shared
// immutable snapshots.
class PrimeTableCache {
 public:
  static PrimeTableCache& global();

  // Empty path disables the disk cache.
  void set_directory(std::filesystem::path dir);
  void set_threads(unsigned threads);

  std::shared_ptr<const PrimeTable> at_least(std::uint64_t limit);

 private:
  std::mutex mutex_;
  std::filesystem::path dir_;
  unsigned threads_ = 0;
  std::shared_ptr<const PrimeTable> current_;
};

struct ReversedPrimeRecord {
  std::uint64_t n = 0;    // rev p
  std::uint64_t p = 0;    // source prime
  double weight = 0.0;    // ln p
  bool coprime = false;   // gcd(n, b^3 - b) = 1

  friend bool operator==(const ReversedPrimeRecord&, const ReversedPrimeRecord&) = default;
};

// Smallest table limit that settles primality of rev n for every n <= x:
// b^L - 1 with L the digit length of x.
std::uint64_t reversal_table_limit(std::uint64_t x, const Base& base);

// Every n <= x with n % b != 0 and rev n prime (and, if require_coprime,
// gcd(n, b^3 - b) = 1), ascending in n. Found by reversing the primes below
// b^L rather than testing each n.
std::vector<ReversedPrimeRecord> enumerate_reversed_primes(std::uint64_t x, const Base& base,
                                                           bool require_coprime,
                                                           const PrimeTable& table);
std::vector<ReversedPrimeRecord> enumerate_reversed_primes(std::uint64_t x, const Base& base,
                                                           bool require_coprime);

enum class SequenceKind { prime, reversed_prime_coprime, indicator };

// Dense non-negative weights w[0..x]; the operand of every convolution.
struct WeightedSequence {
  SequenceKind kind = SequenceKind::indicator;
  std::vector<double> weights;

  std::size_t length() const noexcept { return weights.size(); }
};

inline constexpr std::uint64_t kMaxSequenceIndex = std::uint64_t{1} << 31;

// kind == prime: w[n] = ln n for prime n. kind == reversed_prime_coprime:
// w[n] = ln(rev n) for coprime reversed primes n. Throws ResourceError above
// kMaxSequenceIndex.
WeightedSequence weighted_indicator(std::uint64_t x, const Base& base, SequenceKind kind);

}  // namespace revprime
