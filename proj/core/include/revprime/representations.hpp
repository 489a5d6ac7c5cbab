#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revprime/convolution.hpp"
#include "revprime/digits.hpp"
#include "revprime/sieve.hpp"

namespace revprime {

enum class Family { R11, R12, R21, R0k, Rsquare };

// exact: integer arithmetic or a direct sum; fft: read off a float
// convolution; sampled: Monte Carlo (circle probes only).
enum class Provenance { exact, fft, sampled };

std::string to_string(Family f);
std::string to_string(Provenance p);

struct RepresentationProfile {
  std::uint64_t N = 0;
  Family family = Family::R11;
  unsigned k = 2;
  double exact = 0.0;      // the weighted count
  double predicted = 0.0;  // singular series times the combinatorial factor
  double ratio = 0.0;      // NaN when predicted == 0
  double error_bound = 0.0;
  Provenance provenance = Provenance::fft;
  // exact was within error_bound of zero and was settled by an exact support
  // check.
  bool rechecked = false;
};

inline constexpr unsigned kMaxPureSummands = 6;

// Every N in [0, n_max] from one chain of convolutions. For family R0k,
// 2 <= k <= 6; k is ignored otherwise. Entries with N < 2 are zero.
std::vector<RepresentationProfile> R_profiles(std::uint64_t n_max, Family family, unsigned k, const Base& base,
                                              unsigned threads = 0);

RepresentationProfile R(std::uint64_t N, Family family, unsigned k, const Base& base);

// Sum of ln p over coprime reversed primes rev p < N with N - rev p
// squarefree (rev p = N is excluded, mu^2(0) = 0). Direct summation.
RepresentationProfile R_square(std::uint64_t N, const Base& base);

// Combinatorial factor: for R12 the count of n1+n2+n3 = N (all >= 1) with
// n2, n3 in B; for R21 with n3 in B; for R0k the k-fold compositions with every
// part in B; for R11 and Rsquare, #B(N).
std::uint64_t S_comb(std::uint64_t N, Family family, unsigned k, const Base& base);
std::vector<std::uint64_t> S_comb_profile(std::uint64_t n_max, Family family, unsigned k, const Base& base);

struct ExceptionReport {
  std::uint64_t x = 0;
  std::uint64_t evens = 0;  // even N in [2, x]
  std::vector<std::uint64_t> exceptions;

  std::uint64_t count() const noexcept { return exceptions.size(); }
  double density() const noexcept { return evens == 0 ? 0.0 : static_cast<double>(count()) / static_cast<double>(x / 2); }
};

// Even N <= x with no N = p1 + rev p2, gcd(rev p2, b^3 - b) = 1. Exact.
ExceptionReport count_exceptions(std::uint64_t x, const Base& base, unsigned threads = 0);

// mu^2(n) for 0 <= n <= limit, with mu^2(0) = 0.
std::vector<std::uint8_t> squarefree_table(std::uint64_t limit);

}  // namespace revprime
