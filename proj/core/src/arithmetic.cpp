#include "revprime/arithmetic.hpp"

#include <numeric>

#include "revprime/error.hpp"

namespace revprime {
namespace {

using boost::multiprecision::cpp_int;

void require_positive(std::uint64_t n, const char* what) {
  if (n == 0) throw DomainError(std::string(what) + " needs an argument >= 1");
}

std::uint64_t reduce(std::int64_t a, std::uint64_t q) {
  const auto sq = static_cast<std::int64_t>(q);
  if (sq > 0) return static_cast<std::uint64_t>(((a % sq) + sq) % sq);
  // q >= 2^63: a mod q is a itself, or a + q when negative.
  return a >= 0 ? static_cast<std::uint64_t>(a) : q - static_cast<std::uint64_t>(-(a + 1)) - 1;
}

Rational frac(std::int64_t num, const cpp_int& den) { return Rational(cpp_int(num), den); }

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  require_positive(n, "factorize");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  auto strip = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e != 0) out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  for (std::uint64_t p = 5; p <= n / p; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int mobius(std::uint64_t n) {
  int mu = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t a) {
  require_positive(q, "ramanujan_sum");
  const std::uint64_t g = std::gcd(reduce(a, q), q);  // gcd(0, q) = q
  const std::uint64_t t = q / g;
  const int mu = mobius(t);
  if (mu == 0) return 0;
  return mu * static_cast<std::int64_t>(totient(q) / totient(t));
}

int f_b(std::uint64_t q, std::int64_t a, const Base& base) {
  require_positive(q, "f_b");
  if (std::gcd(reduce(a, q), q) != 1) {
    throw DomainError("f_b needs gcd(a, q) = 1, got a=" + std::to_string(a) + " q=" + std::to_string(q));
  }
  if (base.modulus() % q != 0) return 0;
  return mobius(q);
}

Rational singular_S2(std::uint64_t N, const Base& base) {
  require_positive(N, "singular_S2");
  Rational out = 1;
  for (const auto p : base.modulus_primes()) {
    const cpp_int pm1 = p - 1;
    if (N % p == 0) {
      out *= 1 + Rational(1, pm1);
    } else {
      out *= 1 - Rational(1, pm1 * pm1);
    }
  }
  return out;
}

Rational singular_S3(std::uint64_t N, const Base& base) {
  require_positive(N, "singular_S3");
  Rational out = 1;
  for (const auto p : base.modulus_primes()) {
    const cpp_int pm1 = p - 1;
    if (N % p == 0) {
      out *= 1 - Rational(1, pm1 * pm1);
    } else {
      out *= 1 + Rational(1, pm1 * pm1 * pm1);
    }
  }
  return out;
}

Rational singular_Sk(std::uint64_t N, unsigned k, const Base& base) {
  require_positive(N, "singular_Sk");
  if (k < 2 || k > 64) throw DomainError("singular_Sk needs 2 <= k <= 64, got " + std::to_string(k));
  Rational out = 1;
  for (const auto p : base.modulus_primes()) {
    // 1 - (-1/(p-1))^e
    const unsigned e = (N % p == 0) ? k - 1 : k;
    const cpp_int den = boost::multiprecision::pow(cpp_int(p - 1), e);
    const int sign = (e % 2 == 0) ? 1 : -1;
    out *= 1 - frac(sign, den);
  }
  return out;
}

Rational singular_Ssquare(std::uint64_t N, const Base& base) {
  require_positive(N, "singular_Ssquare");
  Rational out = 1;
  for (const auto p : base.modulus_primes()) {
    const cpp_int pp = p;
    if (N % p == 0) {
      out *= 1 + Rational(1, pp * pp - 1);
    } else {
      out *= 1 - Rational(1, pp * pp - pp);
    }
  }
  return out;
}

Rational singular_Ssquare_complete(std::uint64_t N, const Base& base) {
  require_positive(N, "singular_Ssquare_complete");
  Rational out = singular_Ssquare(N, base);
  for (const auto p : base.modulus_primes()) {
    const cpp_int pp = p;
    if (N % p != 0) out *= Rational(pp * pp, pp * pp - 1);
  }
  return out;
}

Rational singular_S3_sum_form(std::uint64_t N, const Base& base) {
  require_positive(N, "singular_S3_sum_form");
  const auto& primes = base.modulus_primes();
  const std::size_t w = primes.size();
  if (w > 24) throw ResourceError("b^3 - b has too many prime factors for the divisor sum");
  Rational total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w); ++mask) {
    u128 q = 1;
    cpp_int phi = 1;
    int mu = 1;
    for (std::size_t i = 0; i < w; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        q *= primes[i];
        phi *= primes[i] - 1;
        mu = -mu;
      }
    }
    cpp_int c;
    if (q <= ~std::uint64_t{0}) {
      const auto q64 = static_cast<std::uint64_t>(q);
      const std::uint64_t g = std::gcd(N % q64, q64);
      // q squarefree: c_q(N) = mu(q/g) phi(q)/phi(q/g) = mu(q/g) phi(g).
      int mu_t = 1;
      cpp_int phi_g = 1;
      for (std::size_t i = 0; i < w; ++i) {
        if (!(mask & (std::uint64_t{1} << i))) continue;
        if (g % primes[i] == 0) {
          phi_g *= primes[i] - 1;
        } else {
          mu_t = -mu_t;
        }
      }
      c = mu_t * phi_g;
    } else {
      // c_q(N) is multiplicative in q; c_p(N) = p - 1 if p | N, else -1.
      c = 1;
      for (std::size_t i = 0; i < w; ++i) {
        if (!(mask & (std::uint64_t{1} << i))) continue;
        c *= (N % primes[i] == 0) ? cpp_int(primes[i] - 1) : cpp_int(-1);
      }
    }
    total += Rational(mu * c, phi * phi * phi);
  }
  return total;
}

SingularValue singular_value(SingularFamily family, std::uint64_t N, const Base& base, unsigned k) {
  SingularValue out;
  out.family = family;
  out.N = N;
  out.base = base.value();
  out.k = k;
  switch (family) {
    case SingularFamily::S2:
      out.k = 2;
      out.value = singular_S2(N, base);
      break;
    case SingularFamily::S3:
      out.k = 3;
      out.value = singular_S3(N, base);
      break;
    case SingularFamily::Sk:
      out.value = singular_Sk(N, k, base);
      break;
    case SingularFamily::Ssquare:
      out.value = singular_Ssquare(N, base);
      break;
  }
  return out;
}

std::string to_string(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace revprime
