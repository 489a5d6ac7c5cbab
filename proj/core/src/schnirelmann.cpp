#include "revprime/schnirelmann.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "revprime/error.hpp"
#include "revprime/parallel.hpp"
#include "revprime/sieve.hpp"

namespace revprime {
namespace {

constexpr std::array<std::uint64_t, 9> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23};

void check_index(unsigned i) {
  if (i < 1 || i > kSmallPrimes.size()) throw DomainError("primorial index must be in [1, 9], got " + std::to_string(i));
}

// Writes k summands, each <= cap, summing to target into out[pos..]; summands
// are taken largest first so the witness comes out nonincreasing.
bool search(std::uint64_t target, unsigned k, std::uint64_t cap, const ReversedPrimeSet& set,
            std::vector<std::uint64_t>& out) {
  const auto& s = set.sorted();
  if (s.empty()) return false;
  const std::uint64_t smallest = s.front();
  if (k == 1) {
    if (target <= cap && set.contains(target)) {
      out.push_back(target);
      return true;
    }
    return false;
  }
  if (target < k * smallest) return false;
  if (k == 2) {
    // Meet in the middle: first summand >= target/2, second is a lookup.
    const std::uint64_t top = std::min(cap, target - smallest);
    auto it = std::upper_bound(s.begin(), s.end(), top);
    while (it != s.begin()) {
      --it;
      const std::uint64_t first = *it;
      if (2 * first < target) break;
      if (set.contains(target - first)) {
        out.push_back(first);
        out.push_back(target - first);
        return true;
      }
    }
    return false;
  }
  // Largest summand lies in [ceil(target/k), target - (k-1) smallest].
  const std::uint64_t top = std::min(cap, target - (k - 1) * smallest);
  const std::uint64_t floor_first = (target + k - 1) / k;
  auto it = std::upper_bound(s.begin(), s.end(), top);
  while (it != s.begin()) {
    --it;
    const std::uint64_t first = *it;
    if (first < floor_first) break;
    out.push_back(first);
    if (search(target - first, k - 1, first, set, out)) return true;
    out.pop_back();
  }
  return false;
}

}  // namespace

std::uint64_t primorial(unsigned i) {
  check_index(i);
  std::uint64_t out = 1;
  for (unsigned j = 0; j < i; ++j) out *= kSmallPrimes[j];
  return out;
}

std::uint64_t nth_small_prime(unsigned i) {
  check_index(i);
  return kSmallPrimes[i - 1];
}

GapReport verify_gap(unsigned i, std::uint32_t L) {
  if (L < 2) throw DomainError("verify_gap needs L >= 2");
  const Base base(primorial(i));
  const std::uint64_t p_i = nth_small_prime(i);
  GapReport rep;
  rep.base = base.value();
  rep.i = i;
  rep.L = L;
  const std::uint64_t block = checked_power(base.value(), L - 1);
  rep.lo = 2 * block;
  rep.hi = (p_i + 1) * block;
  rep.forced_k = Rational(boost::multiprecision::cpp_int(p_i + 1), boost::multiprecision::cpp_int(2));
  for (const auto& rec : enumerate_reversed_primes(rep.hi, base, false)) {
    if (rec.n >= rep.lo && rec.n <= rep.hi) ++rep.reversed_prime_count;
  }
  return rep;
}

ReversedPrimeSet::ReversedPrimeSet(std::uint64_t limit, const Base& base) : limit_(limit) {
  if (limit > kMaxSequenceIndex) throw ResourceError("reversed-prime set limit exceeds 2^31", limit / 8);
  member_.assign(limit + 1, false);
  if (limit == 0) return;
  for (const auto& rec : enumerate_reversed_primes(limit, base, false)) {
    member_[rec.n] = true;
    sorted_.push_back(rec.n);
  }
}

MinKResult min_k_representation(std::uint64_t N, const ReversedPrimeSet& set, unsigned k_max) {
  if (N < 2) throw DomainError("min_k_representation needs N >= 2");
  if (k_max < 1 || k_max > kMaxSummands) {
    throw DomainError("k_max must be in [1, " + std::to_string(kMaxSummands) + "], got " + std::to_string(k_max));
  }
  if (set.limit() < N) throw DomainError("reversed-prime set does not reach N");
  MinKResult out;
  for (unsigned k = 1; k <= k_max; ++k) {
    std::vector<std::uint64_t> witness;
    if (search(N, k, N, set, witness)) {
      out.k = k;
      out.witness = std::move(witness);
      out.singleton = k == 1;
      return out;
    }
  }
  return out;
}

MinKResult min_k_representation(std::uint64_t N, const Base& base, unsigned k_max) {
  if (N < 2) throw DomainError("min_k_representation needs N >= 2");
  return min_k_representation(N, ReversedPrimeSet(N, base), k_max);
}

ScanReport scan_min_k(std::uint64_t x_lo, std::uint64_t x_hi, const Base& base, unsigned k_max, unsigned threads) {
  if (x_lo < 2 || x_hi < x_lo) throw DomainError("scan_min_k needs 2 <= x_lo <= x_hi");
  const ReversedPrimeSet set(x_hi, base);
  ScanReport rep;
  rep.x_lo = x_lo;
  rep.x_hi = x_hi;
  rep.k_max = k_max;
  const std::uint64_t count = x_hi - x_lo + 1;
  rep.min_k.assign(count, 0);
  constexpr std::size_t kChunk = 1024;
  parallel_for((count + kChunk - 1) / kChunk, threads, [&](std::size_t c) {
    const std::uint64_t lo = c * kChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(count, lo + kChunk);
    for (std::uint64_t j = lo; j < hi; ++j) {
      const MinKResult r = min_k_representation(x_lo + j, set, k_max);
      rep.min_k[j] = static_cast<std::uint8_t>(r.k.value_or(0));
    }
  });
  rep.histogram.assign(k_max + 1, 0);
  for (std::uint64_t j = 0; j < count; ++j) {
    ++rep.histogram[rep.min_k[j]];
    if (rep.min_k[j] == 0) rep.failures.push_back(x_lo + j);
  }
  return rep;
}

}  // namespace revprime
