#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "revprime/digits.hpp"

namespace revprime {

using Rational = boost::multiprecision::cpp_rational;

// Twin prime constant, for display next to odd-N values of S3.
inline constexpr double kTwinPrimeConstant = 0.66016181584686957;

// (prime, exponent) pairs, ascending. n >= 1; factorize(1) is empty.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

int mobius(std::uint64_t n);
std::uint64_t totient(std::uint64_t n);

// c_q(a) = mu(q / (a,q)) phi(q) / phi(q / (a,q)).
std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t a);

// sum_{r mod q} e(ra/q) rho_b(r, q), which is mu(q) when q | b^3 - b and 0
// otherwise. Throws DomainError unless gcd(a, q) = 1.
int f_b(std::uint64_t q, std::int64_t a, const Base& base);

// Products over the distinct primes of b^3 - b.
Rational singular_S2(std::uint64_t N, const Base& base);
Rational singular_S3(std::uint64_t N, const Base& base);
Rational singular_Sk(std::uint64_t N, unsigned k, const Base& base);  // 2 <= k <= 64
Rational singular_Ssquare(std::uint64_t N, const Base& base);
// The same local densities with the p^2/(p^2-1) that completes 1/zeta(2)
// kept at every p | b^3 - b, not only at p | N. This is the constant the
// squarefree count actually approaches; singular_Ssquare drops the factor
// at p not dividing N.
Rational singular_Ssquare_complete(std::uint64_t N, const Base& base);

// sum over squarefree q | b^3 - b of mu(q) c_q(N) / phi(q)^3.
Rational singular_S3_sum_form(std::uint64_t N, const Base& base);

enum class SingularFamily { S2, S3, Sk, Ssquare };

struct SingularValue {
  SingularFamily family = SingularFamily::S3;
  std::uint64_t N = 0;
  std::uint64_t base = 10;
  unsigned k = 3;
  Rational value;

  double to_double() const { return static_cast<double>(value); }
};

SingularValue singular_value(SingularFamily family, std::uint64_t N, const Base& base, unsigned k = 3);

std::string to_string(const Rational& r);

}  // namespace revprime
