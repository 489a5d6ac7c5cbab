#pragma once

#include <cstdint>
#include <vector>

#include "revprime/digits.hpp"
#include "revprime/sieve.hpp"

namespace revprime {

struct APResult {
  double observed = 0.0;   // sum of ln p
  double main_term = 0.0;
  double ratio = 0.0;      // NaN when main_term == 0
  std::uint64_t raw_count = 0;
  // q <= b^(L/4), the practical stand-in for the unverifiable q-range condition.
  bool within_q_range = true;
};

// (q, b^3-b) / phi((q, b^3-b)) * rho_b(a, q) / q.
double progression_density(std::int64_t a, std::uint64_t q, const Base& base);

// Sum of ln p over L-digit primes p with rev p in B*_L and rev p = a (mod q).
APResult theta_star_L(std::uint32_t L, std::int64_t a, std::uint64_t q, const Base& base);

// Sum of ln p over coprime reversed primes rev p <= x with rev p = a (mod q);
// the main term is progression_density * #B(x).
APResult theta_star_x(std::uint64_t x, std::int64_t a, std::uint64_t q, const Base& base);

// All residues 0 <= a < q in one pass; element a is theta_star_x(x, a, q).
std::vector<APResult> theta_star_x_residues(std::uint64_t x, std::uint64_t q, const Base& base);

// Same, reusing an enumeration (records must be the coprime set up to x).
std::vector<APResult> theta_star_x_residues(std::uint64_t x, std::uint64_t q, const Base& base,
                                            const std::vector<ReversedPrimeRecord>& records);

// rev p restricted to the window [r b^(L-eta), (r+1) b^(L-eta)). Computed from
// the reversed side and from the prime side (p = rev r mod b^eta); throws
// Error if the two disagree. DomainError unless 1 <= eta <= L and
// b^(eta-1) <= r < b^eta.
APResult theta_star_partitioned(std::uint32_t L, std::uint32_t eta, std::uint64_t r, std::int64_t a,
                                std::uint64_t q, const Base& base);

// Sums theta_star_partitioned over every r for eta = 1 and eta = 2 (when
// eta <= L) and compares with theta_star_L: counts exactly, sums within
// 8 ulp per term.
bool aggregate_check(std::uint32_t L, std::int64_t a, std::uint64_t q, const Base& base);

}  // namespace revprime
