#include "revprime/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace revprime::verify {
namespace {

std::uint64_t modulus_of(std::uint64_t b) {
  if (b < 2 || b > (std::uint64_t{1} << 21)) throw std::invalid_argument("oracle bases must lie in [2, 2^21]");
  return b * b * b - b;
}

bool leading_coprime(std::uint64_t n, std::uint64_t b) {
  return std::gcd(static_cast<std::uint64_t>(digit_string(n, b).front()), b) == 1;
}

struct Lists {
  std::vector<std::uint64_t> primes;
  std::vector<double> prime_w;
  std::vector<std::uint64_t> revs;
  std::vector<double> rev_w;
};

Lists lists(std::uint64_t n_max, std::uint64_t b) {
  Lists out;
  out.primes = primes_td(n_max);
  for (auto p : out.primes) out.prime_w.push_back(std::log(static_cast<double>(p)));
  for (const auto& rec : reversed_primes_oracle(n_max, b, true)) {
    out.revs.push_back(rec.n);
    out.rev_w.push_back(std::log(static_cast<double>(rec.p)));
  }
  return out;
}

}  // namespace

bool is_prime_td(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_squarefree_td(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % (d * d) == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> digit_string(std::uint64_t n, std::uint64_t b) {
  std::vector<std::uint32_t> out;
  do {
    out.push_back(static_cast<std::uint32_t>(n % b));
    n /= b;
  } while (n != 0);
  std::reverse(out.begin(), out.end());
  return out;
}

std::uint64_t reverse_oracle(std::uint64_t n, std::uint64_t b) {
  auto digits = digit_string(n, b);
  std::reverse(digits.begin(), digits.end());
  std::uint64_t out = 0;
  for (auto d : digits) out = out * b + d;  // leading zeros vanish here
  return out;
}

std::vector<std::uint64_t> primes_td(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= x; ++n) {
    if (is_prime_td(n)) out.push_back(n);
  }
  return out;
}

std::vector<OracleRecord> reversed_primes_oracle(std::uint64_t x, std::uint64_t b, bool coprime) {
  const std::uint64_t m = modulus_of(b);
  std::vector<OracleRecord> out;
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (n % b == 0) continue;
    const std::uint64_t p = reverse_oracle(n, b);
    if (!is_prime_td(p)) continue;
    if (coprime && std::gcd(n, m) != 1) continue;
    out.push_back({n, p});
  }
  return out;
}

std::vector<double> brute_representations(const std::string& family, unsigned k, std::uint64_t n_max,
                                          std::uint64_t b) {
  const Lists L = lists(n_max, b);
  std::vector<double> out(n_max + 1, 0.0);
  const auto& P = L.primes;
  const auto& R = L.revs;

  if (family == "r11") {
    for (std::size_t i = 0; i < P.size(); ++i) {
      for (std::size_t j = 0; j < R.size() && P[i] + R[j] <= n_max; ++j) {
        out[P[i] + R[j]] += L.prime_w[i] * L.rev_w[j];
      }
    }
  } else if (family == "r12") {
    for (std::size_t i = 0; i < P.size(); ++i) {
      for (std::size_t j = 0; j < R.size() && P[i] + R[j] <= n_max; ++j) {
        for (std::size_t l = 0; l < R.size() && P[i] + R[j] + R[l] <= n_max; ++l) {
          out[P[i] + R[j] + R[l]] += L.prime_w[i] * L.rev_w[j] * L.rev_w[l];
        }
      }
    }
  } else if (family == "r21") {
    for (std::size_t i = 0; i < P.size(); ++i) {
      for (std::size_t j = 0; j < P.size() && P[i] + P[j] <= n_max; ++j) {
        for (std::size_t l = 0; l < R.size() && P[i] + P[j] + R[l] <= n_max; ++l) {
          out[P[i] + P[j] + R[l]] += L.prime_w[i] * L.prime_w[j] * L.rev_w[l];
        }
      }
    }
  } else if (family == "r0k" && k == 2) {
    for (std::size_t i = 0; i < R.size(); ++i) {
      for (std::size_t j = 0; j < R.size() && R[i] + R[j] <= n_max; ++j) {
        out[R[i] + R[j]] += L.rev_w[i] * L.rev_w[j];
      }
    }
  } else if (family == "r0k" && k == 3) {
    for (std::size_t i = 0; i < R.size(); ++i) {
      for (std::size_t j = 0; j < R.size() && R[i] + R[j] <= n_max; ++j) {
        for (std::size_t l = 0; l < R.size() && R[i] + R[j] + R[l] <= n_max; ++l) {
          out[R[i] + R[j] + R[l]] += L.rev_w[i] * L.rev_w[j] * L.rev_w[l];
        }
      }
    }
  } else if (family == "rsquare") {
    for (std::size_t i = 0; i < R.size(); ++i) {
      for (std::uint64_t N = R[i] + 1; N <= n_max; ++N) {
        if (is_squarefree_td(N - R[i])) out[N] += L.rev_w[i];
      }
    }
  } else {
    throw std::invalid_argument("unknown oracle family " + family);
  }
  return out;
}

double brute_R_square(std::uint64_t N, std::uint64_t b) {
  double total = 0.0;
  for (const auto& rec : reversed_primes_oracle(N, b, true)) {
    if (rec.n < N && is_squarefree_td(N - rec.n)) total += std::log(static_cast<double>(rec.p));
  }
  return total;
}

std::uint64_t brute_S12(std::uint64_t N, std::uint64_t b) {
  std::uint64_t count = 0;
  for (std::uint64_t n2 = 1; n2 + 2 <= N; ++n2) {
    if (!leading_coprime(n2, b)) continue;
    for (std::uint64_t n3 = 1; n2 + n3 + 1 <= N; ++n3) {
      if (leading_coprime(n3, b)) ++count;  // n1 = N - n2 - n3 >= 1
    }
  }
  return count;
}

std::uint64_t brute_S21(std::uint64_t N, std::uint64_t b) {
  std::uint64_t count = 0;
  for (std::uint64_t n1 = 1; n1 + 2 <= N; ++n1) {
    for (std::uint64_t n2 = 1; n1 + n2 + 1 <= N; ++n2) {
      if (leading_coprime(N - n1 - n2, b)) ++count;
    }
  }
  return count;
}

std::vector<std::uint64_t> brute_exceptions(std::uint64_t x, std::uint64_t b) {
  const auto P = primes_td(x);
  std::vector<bool> is_p(x + 1, false);
  for (auto p : P) is_p[p] = true;
  const auto R = reversed_primes_oracle(x, b, true);
  std::vector<std::uint64_t> out;
  for (std::uint64_t N = 2; N <= x; N += 2) {
    bool found = false;
    for (const auto& rec : R) {
      if (rec.n >= N) break;
      if (is_p[N - rec.n]) {
        found = true;
        break;
      }
    }
    if (!found) out.push_back(N);
  }
  return out;
}

}  // namespace revprime::verify
