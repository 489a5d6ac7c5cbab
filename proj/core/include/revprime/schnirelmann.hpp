#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "revprime/arithmetic.hpp"
#include "revprime/digits.hpp"

namespace revprime {

// Product of the first i primes, 1 <= i <= 9.
std::uint64_t primorial(unsigned i);
// The i-th prime, 1 <= i <= 9.
std::uint64_t nth_small_prime(unsigned i);

struct GapReport {
  std::uint64_t base = 0;  // b_i
  unsigned i = 0;
  std::uint32_t L = 0;
  std::uint64_t lo = 0;  // 2 b_i^(L-1)
  std::uint64_t hi = 0;  // (p_i + 1) b_i^(L-1), inclusive
  std::uint64_t reversed_prime_count = 0;
  Rational forced_k;  // (p_i + 1) / 2
};

// Counts every reversed prime (no coprimality filter) in [lo, hi].
GapReport verify_gap(unsigned i, std::uint32_t L);

// All reversed primes up to a limit, with O(1) membership.
class ReversedPrimeSet {
 public:
  ReversedPrimeSet(std::uint64_t limit, const Base& base);

  std::uint64_t limit() const noexcept { return limit_; }
  bool contains(std::uint64_t n) const noexcept { return n <= limit_ && member_[n]; }
  const std::vector<std::uint64_t>& sorted() const noexcept { return sorted_; }

 private:
  std::uint64_t limit_;
  std::vector<bool> member_;
  std::vector<std::uint64_t> sorted_;
};

inline constexpr unsigned kMaxSummands = 8;

struct MinKResult {
  std::optional<unsigned> k;           // none: no k <= k_max works
  std::vector<std::uint64_t> witness;  // nonincreasing, sums to N
  bool singleton = false;              // k == 1, which rev K_b excludes by definition
};

MinKResult min_k_representation(std::uint64_t N, const Base& base, unsigned k_max);
MinKResult min_k_representation(std::uint64_t N, const ReversedPrimeSet& set, unsigned k_max);

struct ScanReport {
  std::uint64_t x_lo = 0;
  std::uint64_t x_hi = 0;
  unsigned k_max = 0;
  // histogram[k] = #N with minimal k; histogram[0] counts failures.
  std::vector<std::uint64_t> histogram;
  std::vector<std::uint64_t> failures;
  std::vector<std::uint8_t> min_k;  // per N, 0 for failure
};

// Output is independent of the thread count.
ScanReport scan_min_k(std::uint64_t x_lo, std::uint64_t x_hi, const Base& base, unsigned k_max, unsigned threads = 0);

}  // namespace revprime
