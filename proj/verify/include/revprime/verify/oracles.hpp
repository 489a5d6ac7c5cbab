#pragma once

// Reference implementations used to check the core library. They share no
// code with it: primality is trial division, reversal goes through a digit
// string, and counts come from nested loops over explicit lists.

#include <cstdint>
#include <string>
#include <vector>

namespace revprime::verify {

bool is_prime_td(std::uint64_t n);
bool is_squarefree_td(std::uint64_t n);

// Digits of n in base b, most significant first.
std::vector<std::uint32_t> digit_string(std::uint64_t n, std::uint64_t b);
std::uint64_t reverse_oracle(std::uint64_t n, std::uint64_t b);

struct OracleRecord {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
};

// n <= x with a nonzero last digit and rev n prime (and, if coprime,
// gcd(n, b^3 - b) = 1), by testing every n. Requires b <= 2^21.
std::vector<OracleRecord> reversed_primes_oracle(std::uint64_t x, std::uint64_t b, bool coprime);

std::vector<std::uint64_t> primes_td(std::uint64_t x);

// Weighted representation counts for every N in [0, n_max] by looping over
// the admissible summand lists. family is one of "r11", "r12", "r21", "r0k",
// "rsquare"; k is used by r0k (2 or 3).
std::vector<double> brute_representations(const std::string& family, unsigned k, std::uint64_t n_max,
                                          std::uint64_t b);

// Sum of ln p over coprime rev p < N with N - rev p squarefree.
double brute_R_square(std::uint64_t N, std::uint64_t b);

// Combinatorial factors by enumeration of (n1, n2, n3) with positive parts.
std::uint64_t brute_S12(std::uint64_t N, std::uint64_t b);
std::uint64_t brute_S21(std::uint64_t N, std::uint64_t b);

// Even N <= x that are not p + rev p2 with rev p2 coprime to b^3 - b.
std::vector<std::uint64_t> brute_exceptions(std::uint64_t x, std::uint64_t b);

}  // namespace revprime::verify
