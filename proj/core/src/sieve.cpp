#include "revprime/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <string>

#include "revprime/cache.hpp"
#include "revprime/error.hpp"
#include "revprime/parallel.hpp"

namespace revprime {
namespace {

constexpr std::size_t kSegmentWords = 1 << 13;  // 512K odd numbers, 64 KiB

// Odd primes up to limit by a plain (unsegmented) sieve; limit is small here.
std::vector<std::uint32_t> small_odd_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit / 2 + 1, false);
  for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t j = p * p / 2; 2 * j + 1 <= limit; j += p) composite[j] = true;
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> words)
    : limit_(limit), words_(std::move(words)) {
  if (words_.size() != words_for(limit)) {
    throw DomainError("prime table word count does not match limit " + std::to_string(limit));
  }
}

std::uint64_t PrimeTable::count() const noexcept {
  std::uint64_t total = limit_ >= 2 ? 1 : 0;
  for (auto w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::vector<std::uint64_t> PrimeTable::primes(std::uint64_t lo, std::uint64_t hi) const {
  std::vector<std::uint64_t> out;
  for_each_prime(lo, hi, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

PrimeTable sieve_primes(std::uint64_t limit, unsigned threads) {
  if (limit < 2) throw DomainError("sieve limit must be >= 2, got " + std::to_string(limit));
  const std::uint64_t bytes = PrimeTable::words_for(limit) * 8;
  if (limit > PrimeTable::kMaxLimit) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds 2^38; the table would need " +
                            std::to_string(bytes) + " bytes",
                        bytes);
  }

  PrimeTable table;
  table.limit_ = limit;
  try {
    table.words_.assign(PrimeTable::words_for(limit), ~std::uint64_t{0});
  } catch (const std::bad_alloc&) {
    throw ResourceError("cannot allocate " + std::to_string(bytes) + " bytes for the sieve", bytes);
  }
  auto& words = table.words_;
  const std::size_t total_words = words.size();

  // Bit j <-> 2j + 1: clear the bit for 1 and everything past limit.
  words[0] &= ~std::uint64_t{1};
  const std::uint64_t last_index = (limit - 1) / 2;  // largest odd <= limit
  const std::uint64_t tail = (last_index & 63) + 1;
  if (tail < 64) words[total_words - 1] &= (std::uint64_t{1} << tail) - 1;

  const std::vector<std::uint32_t> base = small_odd_primes(isqrt(limit));
  const std::size_t segments = (total_words + kSegmentWords - 1) / kSegmentWords;

  parallel_for(segments, threads, [&](std::size_t s) {
    const std::uint64_t w_lo = s * kSegmentWords;
    const std::uint64_t w_hi = std::min<std::uint64_t>(total_words, w_lo + kSegmentWords);
    const std::uint64_t j_lo = w_lo * 64;
    const std::uint64_t j_hi = std::min<std::uint64_t>(w_hi * 64, last_index + 1);
    std::uint64_t* seg = words.data();
    for (const std::uint32_t p32 : base) {
      const std::uint64_t p = p32;
      // First odd multiple of p that is >= max(p^2, 2 j_lo + 1), as an index.
      std::uint64_t j = p * p / 2;
      if (j < j_lo) {
        const std::uint64_t n_lo = 2 * j_lo + 1;
        std::uint64_t m = (n_lo + p - 1) / p * p;
        if ((m & 1) == 0) m += p;
        j = m / 2;
      }
      for (; j < j_hi; j += p) seg[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
    }
  });
  return table;
}

PrimeTableCache& PrimeTableCache::global() {
  static PrimeTableCache instance;
  return instance;
}

void PrimeTableCache::set_directory(std::filesystem::path dir) {
  std::lock_guard lock(mutex_);
  dir_ = std::move(dir);
}

void PrimeTableCache::set_threads(unsigned threads) {
  std::lock_guard lock(mutex_);
  threads_ = threads;
}

std::shared_ptr<const PrimeTable> PrimeTableCache::at_least(std::uint64_t limit) {
  std::lock_guard lock(mutex_);
  if (current_ && current_->limit() >= limit) return current_;
  if (limit > PrimeTable::kMaxLimit) {
    const std::uint64_t bytes = PrimeTable::words_for(limit) * 8;
    throw ResourceError("prime table limit " + std::to_string(limit) + " exceeds 2^38 (" +
                            std::to_string(bytes) + " bytes)",
                        bytes);
  }
  // Round up to a power of two so that nearby requests share one table and
  // one cache file.
  std::uint64_t target = std::uint64_t{1} << 16;
  while (target < limit) target <<= 1;

  std::shared_ptr<const PrimeTable> fresh;
  std::filesystem::path file;
  if (!dir_.empty()) {
    file = dir_ / ("primes-" + std::to_string(target) + ".bin");
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) {
      try {
        fresh = std::make_shared<const PrimeTable>(cache_load(file));
        if (fresh->limit() != target) fresh.reset();
      } catch (const CacheError&) {
        fresh.reset();  // stale or damaged; rebuilt and rewritten below
      }
    }
  }
  if (!fresh) {
    fresh = std::make_shared<const PrimeTable>(sieve_primes(target, threads_));
    if (!file.empty()) {
      try {
        std::filesystem::create_directories(dir_);
        cache_store(file, *fresh);
      } catch (const std::exception&) {
        // The disk cache is an optimisation; a read-only or contended
        // directory must not fail the computation.
      }
    }
  }
  current_ = fresh;
  return current_;
}

std::uint64_t reversal_table_limit(std::uint64_t x, const Base& base) {
  const std::uint32_t len = digit_length(x, base);
  return checked_power(base.value(), len) - 1;
}

std::vector<ReversedPrimeRecord> enumerate_reversed_primes(std::uint64_t x, const Base& base,
                                                           bool require_coprime,
                                                           const PrimeTable& table) {
  if (x == 0) throw DomainError("enumerate_reversed_primes needs x >= 1");
  const std::uint64_t need = reversal_table_limit(x, base);
  if (table.limit() < need) {
    throw DomainError("prime table limit " + std::to_string(table.limit()) + " is below " +
                      std::to_string(need));
  }
  const std::uint64_t b = base.value();
  std::vector<ReversedPrimeRecord> out;
  table.for_each_prime(2, need, [&](std::uint64_t p) {
    if (p % b == 0) return;  // only p == b; its reverse would drop a digit
    const std::uint64_t n = reverse_unchecked(p, b);
    if (n > x) return;
    const bool coprime = base.coprime_to_modulus(n);
    if (require_coprime && !coprime) return;
    out.push_back({n, p, std::log(static_cast<double>(p)), coprime});
  });
  std::sort(out.begin(), out.end(),
            [](const ReversedPrimeRecord& l, const ReversedPrimeRecord& r) { return l.n < r.n; });
  return out;
}

std::vector<ReversedPrimeRecord> enumerate_reversed_primes(std::uint64_t x, const Base& base,
                                                           bool require_coprime) {
  if (x == 0) throw DomainError("enumerate_reversed_primes needs x >= 1");
  const auto table = PrimeTableCache::global().at_least(reversal_table_limit(x, base));
  return enumerate_reversed_primes(x, base, require_coprime, *table);
}

WeightedSequence weighted_indicator(std::uint64_t x, const Base& base, SequenceKind kind) {
  if (x == 0) throw DomainError("weighted_indicator needs x >= 1");
  if (x > kMaxSequenceIndex) {
    throw ResourceError("sequence index " + std::to_string(x) + " exceeds 2^31", (x + 1) * 8);
  }
  WeightedSequence seq;
  seq.kind = kind;
  seq.weights.assign(x + 1, 0.0);
  switch (kind) {
    case SequenceKind::prime: {
      const auto table = PrimeTableCache::global().at_least(std::max<std::uint64_t>(x, 2));
      table->for_each_prime(2, x, [&](std::uint64_t p) {
        seq.weights[p] = std::log(static_cast<double>(p));
      });
      break;
    }
    case SequenceKind::reversed_prime_coprime:
      for (const auto& rec : enumerate_reversed_primes(x, base, true)) seq.weights[rec.n] = rec.weight;
      break;
    case SequenceKind::indicator:
      throw DomainError("weighted_indicator builds prime or reversed_prime_coprime sequences only");
  }
  return seq;
}

}  // namespace revprime
