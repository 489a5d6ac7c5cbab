#pragma once

#include <cstdint>
#include <vector>

namespace revprime {

using u128 = unsigned __int128;

// A radix b >= 2 together with the factorisations that reversal arithmetic
// keeps asking for. b is capped at 2^32 so that b^2 - 1 fits in 64 bits; the
// modulus b^3 - b itself is only held as a 128-bit value.
class Base {
 public:
  static constexpr std::uint64_t kMaxBase = std::uint64_t{1} << 32;

  explicit Base(std::uint64_t b);

  std::uint64_t value() const noexcept { return b_; }
  // b^3 - b = b (b - 1) (b + 1).
  u128 modulus() const noexcept { return modulus_; }
  std::uint64_t square_minus_one() const noexcept { return b_ * b_ - 1; }
  std::uint64_t totient() const noexcept { return totient_; }

  // Distinct primes of b, ascending.
  const std::vector<std::uint64_t>& base_primes() const noexcept { return base_primes_; }
  // Distinct primes dividing b^3 - b, ascending.
  const std::vector<std::uint64_t>& modulus_primes() const noexcept { return modulus_primes_; }

  // gcd(n, b^3 - b) for n >= 1.
  std::uint64_t gcd_with_modulus(std::uint64_t n) const noexcept;
  bool coprime_to_modulus(std::uint64_t n) const noexcept;
  bool coprime_to_base(std::uint64_t n) const noexcept;

  // #{1 <= d < limit : gcd(d, b) = 1}, by inclusion-exclusion over base_primes().
  std::uint64_t coprime_residues_below(std::uint64_t limit) const noexcept;

  friend bool operator==(const Base& lhs, const Base& rhs) noexcept { return lhs.b_ == rhs.b_; }

 private:
  std::uint64_t b_;
  u128 modulus_;
  std::uint64_t totient_;
  std::vector<std::uint64_t> base_primes_;
  std::vector<std::uint64_t> modulus_primes_;
};

// An integer with its base-b digits, little-endian: digits[i] is the
// coefficient of b^i. Zero is the single digit [0].
struct Numeral {
  std::uint64_t value = 0;
  std::vector<std::uint32_t> digits{0};

  static Numeral from(std::uint64_t value, const Base& base);
  std::size_t length() const noexcept { return digits.size(); }
};

std::uint32_t digit_length(std::uint64_t n, const Base& base) noexcept;
std::uint64_t leading_digit(std::uint64_t n, const Base& base) noexcept;

// b^exponent, throwing ResourceError if it does not fit in 64 bits.
std::uint64_t checked_power(std::uint64_t b, std::uint32_t exponent);

// Digital reverse. Trailing zero digits of n become leading zeros of the
// result and are dropped, so reverse(reverse(n)) == n only when n % b != 0.
// Throws DomainError for n == 0.
std::uint64_t reverse(std::uint64_t n, const Base& base);
std::uint64_t reverse(const Numeral& n, const Base& base);

// Unchecked reversal for hot loops; n must be >= 1.
inline std::uint64_t reverse_unchecked(std::uint64_t n, std::uint64_t b) noexcept {
  std::uint64_t out = 0;
  while (n != 0) {
    out = out * b + n % b;
    n /= b;
  }
  return out;
}

// n is coprime to b^3 - b (every n >= 1 lies in B_L for its own length L).
bool is_in_B_star(std::uint64_t n, const Base& base);

// #{1 <= n <= x : leading digit of n coprime to b}, in O(log x).
std::uint64_t count_B(std::uint64_t x, const Base& base);

// 1 iff gcd(rev r, b) = 1.
int kappa(std::uint64_t r, const Base& base);

// 1 iff gcd(a, q, b^3 - b) = 1. a may be any integer; q >= 1.
int rho(std::int64_t a, std::uint64_t q, const Base& base);

}  // namespace revprime
