#include "revprime/progressions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "revprime/error.hpp"

namespace revprime {
namespace {

std::uint64_t residue(std::int64_t a, std::uint64_t q) {
  const auto sq = static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(((a % sq) + sq) % sq);
}

std::uint64_t totient_of_divisor(std::uint64_t g, const Base& base) {
  // g divides b^3 - b, so its primes are among base.modulus_primes().
  std::uint64_t phi = g;
  for (auto p : base.modulus_primes()) {
    if (p > g) break;
    if (g % p == 0) phi = phi / p * (p - 1);
  }
  return phi;
}

bool q_in_range(std::uint64_t q, std::uint32_t L, const Base& base) {
  return std::log(static_cast<double>(q)) <= L / 4.0 * std::log(static_cast<double>(base.value()));
}

void finish(APResult& r) {
  r.ratio = r.main_term == 0.0 ? std::numeric_limits<double>::quiet_NaN() : r.observed / r.main_term;
}

void check_q(std::uint64_t q) {
  if (q == 0) throw DomainError("modulus q must be >= 1");
  if (q > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw DomainError("modulus q is too large");
  }
}

}  // namespace

double progression_density(std::int64_t a, std::uint64_t q, const Base& base) {
  check_q(q);
  if (rho(a, q, base) == 0) return 0.0;
  const std::uint64_t g = base.gcd_with_modulus(q);
  return static_cast<double>(g) / static_cast<double>(totient_of_divisor(g, base)) / static_cast<double>(q);
}

APResult theta_star_L(std::uint32_t L, std::int64_t a, std::uint64_t q, const Base& base) {
  check_q(q);
  if (L == 0) throw DomainError("digit length L must be >= 1");
  const std::uint64_t b = base.value();
  const std::uint64_t hi = checked_power(b, L);
  const std::uint64_t lo = hi / b;
  const auto table = PrimeTableCache::global().at_least(hi - 1);
  const std::uint64_t ar = residue(a, q);

  APResult out;
  table->for_each_prime(lo, hi - 1, [&](std::uint64_t p) {
    if (p % b == 0) return;
    const std::uint64_t n = reverse_unchecked(p, b);
    if (n % q != ar || !base.coprime_to_modulus(n)) return;
    out.observed += std::log(static_cast<double>(p));
    ++out.raw_count;
  });
  out.main_term = static_cast<double>(base.totient()) / static_cast<double>(b) *
                  progression_density(a, q, base) * static_cast<double>(hi);
  out.within_q_range = q_in_range(q, L, base);
  finish(out);
  return out;
}

std::vector<APResult> theta_star_x_residues(std::uint64_t x, std::uint64_t q, const Base& base,
                                            const std::vector<ReversedPrimeRecord>& records) {
  check_q(q);
  if (x == 0) throw DomainError("theta_star_x needs x >= 1");
  if (q > (std::uint64_t{1} << 26)) throw ResourceError("residue table for q > 2^26 is not supported");
  std::vector<APResult> out(q);
  for (const auto& rec : records) {
    if (rec.n > x) break;
    if (!rec.coprime) continue;
    auto& cell = out[rec.n % q];
    cell.observed += rec.weight;
    ++cell.raw_count;
  }
  const double bx = static_cast<double>(count_B(x, base));
  const bool in_range = q_in_range(q, digit_length(x, base), base);
  for (std::uint64_t a = 0; a < q; ++a) {
    out[a].main_term = progression_density(static_cast<std::int64_t>(a), q, base) * bx;
    out[a].within_q_range = in_range;
    finish(out[a]);
  }
  return out;
}

std::vector<APResult> theta_star_x_residues(std::uint64_t x, std::uint64_t q, const Base& base) {
  return theta_star_x_residues(x, q, base, enumerate_reversed_primes(x, base, true));
}

APResult theta_star_x(std::uint64_t x, std::int64_t a, std::uint64_t q, const Base& base) {
  check_q(q);
  if (x == 0) throw DomainError("theta_star_x needs x >= 1");
  const std::uint64_t ar = residue(a, q);
  APResult out;
  for (const auto& rec : enumerate_reversed_primes(x, base, true)) {
    if (rec.n % q != ar) continue;
    out.observed += rec.weight;
    ++out.raw_count;
  }
  out.main_term = progression_density(a, q, base) * static_cast<double>(count_B(x, base));
  out.within_q_range = q_in_range(q, digit_length(x, base), base);
  finish(out);
  return out;
}

APResult theta_star_partitioned(std::uint32_t L, std::uint32_t eta, std::uint64_t r, std::int64_t a,
                                std::uint64_t q, const Base& base) {
  check_q(q);
  if (L == 0 || eta == 0 || eta > L) {
    throw DomainError("partition needs 1 <= eta <= L, got eta=" + std::to_string(eta) + " L=" + std::to_string(L));
  }
  const std::uint64_t b = base.value();
  const std::uint64_t top = checked_power(b, L);
  const std::uint64_t b_eta = checked_power(b, eta);
  if (r < b_eta / b || r >= b_eta) {
    throw DomainError("r=" + std::to_string(r) + " is not an " + std::to_string(eta) + "-digit numeral");
  }
  const std::uint64_t width = top / b_eta;  // b^(L-eta)
  const std::uint64_t lo = r * width;
  const std::uint64_t hi = lo + width;  // exclusive
  const auto table = PrimeTableCache::global().at_least(top - 1);
  const std::uint64_t ar = residue(a, q);

  // Reversed side: walk the window of n = rev p.
  double sum_rev = 0.0;
  std::uint64_t count_rev = 0;
  for (std::uint64_t n = lo; n < hi; ++n) {
    if (n % b == 0 || n % q != ar || !base.coprime_to_modulus(n)) continue;
    const std::uint64_t p = reverse_unchecked(n, b);
    if (!table->is_prime(p)) continue;
    sum_rev += std::log(static_cast<double>(p));
    ++count_rev;
  }

  // Prime side: L-digit p with p = rev r (mod b^eta).
  double sum_prime = 0.0;
  std::uint64_t count_prime = 0;
  const std::uint64_t start = reverse_unchecked(r, b);
  const std::uint64_t p_lo = top / b;
  std::uint64_t p = start + (p_lo > start ? (p_lo - start + b_eta - 1) / b_eta * b_eta : 0);
  for (; p < top; p += b_eta) {
    if (!table->is_prime(p)) continue;
    const std::uint64_t n = reverse_unchecked(p, b);
    if (n % q != ar || !base.coprime_to_modulus(n)) continue;
    sum_prime += std::log(static_cast<double>(p));
    ++count_prime;
  }

  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(count_rev) * sum_rev;
  if (count_rev != count_prime || std::fabs(sum_rev - sum_prime) > tol) {
    throw Error("partition formulations disagree at L=" + std::to_string(L) + " eta=" + std::to_string(eta) +
                " r=" + std::to_string(r) + ": " + std::to_string(count_rev) + " vs " +
                std::to_string(count_prime));
  }

  APResult out;
  out.observed = sum_rev;
  out.raw_count = count_rev;
  out.main_term = kappa(r, base) * progression_density(a, q, base) * static_cast<double>(width);
  out.within_q_range = q_in_range(q, L, base);
  finish(out);
  return out;
}

bool aggregate_check(std::uint32_t L, std::int64_t a, std::uint64_t q, const Base& base) {
  const APResult whole = theta_star_L(L, a, q, base);
  const std::uint64_t b = base.value();
  for (std::uint32_t eta = 1; eta <= 2 && eta <= L; ++eta) {
    const std::uint64_t b_eta = checked_power(b, eta);
    double sum = 0.0;
    std::uint64_t count = 0;
    for (std::uint64_t r = b_eta / b; r < b_eta; ++r) {
      const APResult part = theta_star_partitioned(L, eta, r, a, q, base);
      sum += part.observed;
      count += part.raw_count;
    }
    const double tol = 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(count) * whole.observed;
    if (count != whole.raw_count || std::fabs(sum - whole.observed) > tol) return false;
  }
  return true;
}

}  // namespace revprime
