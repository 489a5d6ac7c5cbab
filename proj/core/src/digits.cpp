#include "revprime/digits.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "revprime/error.hpp"

namespace revprime {
namespace {

void append_prime_factors(std::uint64_t n, std::vector<std::uint64_t>& out) {
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
}

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Base::Base(std::uint64_t b) : b_(b) {
  if (b < 2 || b > kMaxBase) {
    throw DomainError("base must satisfy 2 <= b <= 2^32, got " + std::to_string(b));
  }
  modulus_ = u128{b} * (b - 1) * (b + 1);
  append_prime_factors(b, base_primes_);
  totient_ = b;
  for (auto p : base_primes_) totient_ = totient_ / p * (p - 1);

  std::vector<std::uint64_t> all = base_primes_;
  append_prime_factors(b - 1, all);
  append_prime_factors(b + 1, all);
  modulus_primes_ = sorted_unique(std::move(all));
}

std::uint64_t Base::gcd_with_modulus(std::uint64_t n) const noexcept {
  if (n == 0) return 0;
  const u128 r = modulus_ % n;
  return std::gcd(n, static_cast<std::uint64_t>(r));
}

bool Base::coprime_to_modulus(std::uint64_t n) const noexcept { return gcd_with_modulus(n) == 1; }

bool Base::coprime_to_base(std::uint64_t n) const noexcept { return std::gcd(n, b_) == 1; }

std::uint64_t Base::coprime_residues_below(std::uint64_t limit) const noexcept {
  if (limit <= 1) return 0;
  const std::uint64_t span = limit - 1;
  const std::size_t k = base_primes_.size();
  std::int64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::uint64_t prod = 1;
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        prod *= base_primes_[i];
        sign = -sign;
      }
    }
    total += sign * static_cast<std::int64_t>(span / prod);
  }
  return static_cast<std::uint64_t>(total);
}

Numeral Numeral::from(std::uint64_t value, const Base& base) {
  Numeral out;
  out.value = value;
  out.digits.clear();
  const std::uint64_t b = base.value();
  do {
    out.digits.push_back(static_cast<std::uint32_t>(value % b));
    value /= b;
  } while (value != 0);
  return out;
}

std::uint32_t digit_length(std::uint64_t n, const Base& base) noexcept {
  std::uint32_t len = 1;
  const std::uint64_t b = base.value();
  while (n >= b) {
    n /= b;
    ++len;
  }
  return len;
}

std::uint64_t leading_digit(std::uint64_t n, const Base& base) noexcept {
  const std::uint64_t b = base.value();
  while (n >= b) n /= b;
  return n;
}

std::uint64_t checked_power(std::uint64_t b, std::uint32_t exponent) {
  u128 acc = 1;
  for (std::uint32_t i = 0; i < exponent; ++i) {
    acc *= b;
    if (acc > ~std::uint64_t{0}) {
      throw ResourceError(std::to_string(b) + "^" + std::to_string(exponent) +
                          " does not fit in 64 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t reverse(std::uint64_t n, const Base& base) {
  if (n == 0) throw DomainError("reverse is undefined for 0");
  const std::uint64_t b = base.value();
  u128 out = 0;
  while (n != 0) {
    out = out * b + n % b;
    n /= b;
  }
  if (out > ~std::uint64_t{0}) throw ResourceError("reversal does not fit in 64 bits");
  return static_cast<std::uint64_t>(out);
}

std::uint64_t reverse(const Numeral& n, const Base& base) {
  if (n.value == 0) throw DomainError("reverse is undefined for 0");
  const std::uint64_t b = base.value();
  u128 out = 0;
  for (std::size_t i = 0; i < n.digits.size(); ++i) out = out * b + n.digits[i];
  if (out > ~std::uint64_t{0}) throw ResourceError("reversal does not fit in 64 bits");
  return static_cast<std::uint64_t>(out);
}

bool is_in_B_star(std::uint64_t n, const Base& base) {
  if (n == 0) throw DomainError("B*_L membership needs n >= 1");
  return base.coprime_to_modulus(n);
}

std::uint64_t count_B(std::uint64_t x, const Base& base) {
  if (x == 0) return 0;
  const std::uint64_t b = base.value();
  const std::uint32_t len = digit_length(x, base);
  std::uint64_t total = 0;
  std::uint64_t block = 1;  // b^(l-1)
  for (std::uint32_t l = 1; l < len; ++l) {
    total += base.totient() * block;
    block *= b;
  }
  const std::uint64_t lead = x / block;
  total += base.coprime_residues_below(lead) * block;
  if (base.coprime_to_base(lead)) total += x - lead * block + 1;
  return total;
}

int kappa(std::uint64_t r, const Base& base) {
  if (r == 0) throw DomainError("kappa needs r >= 1");
  return base.coprime_to_base(reverse(r, base)) ? 1 : 0;
}

int rho(std::int64_t a, std::uint64_t q, const Base& base) {
  if (q == 0) throw DomainError("rho needs q >= 1");
  const std::int64_t sq = static_cast<std::int64_t>(q);
  const std::uint64_t residue = static_cast<std::uint64_t>(((a % sq) + sq) % sq);
  const std::uint64_t g = std::gcd(residue, q);
  return base.gcd_with_modulus(g) == 1 ? 1 : 0;
}

}  // namespace revprime
