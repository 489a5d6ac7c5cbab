#include <doctest.h>

#include <numeric>

#include "revprime/error.hpp"
#include "revprime/schnirelmann.hpp"
#include "revprime/verify/oracles.hpp"

using namespace revprime;

namespace {

bool witness_ok(const MinKResult& r, std::uint64_t N, std::uint64_t b) {
  if (!r.k || r.witness.size() != *r.k) return false;
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    const std::uint64_t w = r.witness[i];
    if (w % b == 0 || !verify::is_prime_td(verify::reverse_oracle(w, b))) return false;
    if (i > 0 && w > r.witness[i - 1]) return false;
    sum += w;
  }
  return sum == N;
}

}  // namespace

TEST_CASE("primorials") {
  CHECK(primorial(1) == 2);
  CHECK(primorial(2) == 6);
  CHECK(primorial(3) == 30);
  CHECK(primorial(9) == 223092870);
  CHECK(nth_small_prime(4) == 7);
  CHECK_THROWS_AS(primorial(0), DomainError);
  CHECK_THROWS_AS(primorial(10), DomainError);
}

TEST_CASE("verify_gap examples") {
  const GapReport six = verify_gap(2, 2);
  CHECK(six.base == 6);
  CHECK(six.lo == 12);
  CHECK(six.hi == 24);
  CHECK(six.reversed_prime_count == 0);
  CHECK(six.forced_k == 2);
  CHECK(verify_gap(3, 2).reversed_prime_count == 0);
  CHECK(verify_gap(3, 2).forced_k == 3);

  const GapReport two = verify_gap(1, 3);
  CHECK(two.lo == 8);
  CHECK(two.hi == 12);
  std::uint64_t count = 0;
  for (const auto& r : verify::reversed_primes_oracle(12, 2, false)) count += r.n >= 8;
  CHECK(two.reversed_prime_count == count);
  CHECK_THROWS_AS(verify_gap(2, 1), DomainError);
}

TEST_CASE("property: the primorial gaps are empty") {
  for (unsigned i = 2; i <= 4; ++i) {
    for (std::uint32_t L = 2; L <= 3; ++L) CHECK(verify_gap(i, L).reversed_prime_count == 0);
  }
}

TEST_CASE("min_k_representation examples") {
  const Base ten(10);
  const MinKResult single = min_k_representation(32, ten, 4);
  CHECK(single.k == 1u);
  CHECK(single.singleton);
  CHECK(single.witness == std::vector<std::uint64_t>{32});

  const MinKResult none = min_k_representation(600, ten, 2);
  CHECK_FALSE(none.k.has_value());
  CHECK(none.witness.empty());

  const MinKResult some = min_k_representation(600, ten, 4);
  REQUIRE(some.k.has_value());
  CHECK((*some.k == 3 || *some.k == 4));
  CHECK(witness_ok(some, 600, 10));

  CHECK_THROWS_AS(min_k_representation(1, ten, 3), DomainError);
  CHECK_THROWS_AS(min_k_representation(100, ten, 9), DomainError);
  CHECK_THROWS_AS(min_k_representation(100, ten, 0), DomainError);
  CHECK_THROWS_AS(min_k_representation(100, ReversedPrimeSet(50, ten), 3), DomainError);
}

TEST_CASE("6 * 10^n is not a sum of two reversed primes") {
  const ReversedPrimeSet set(60000, Base(10));
  for (const std::uint64_t N : {600, 6000, 60000}) CHECK_FALSE(min_k_representation(N, set, 2).k.has_value());
}

TEST_CASE("property: minimal k agrees with a brute-force search up to three summands") {
  for (const std::uint64_t b : {2, 3, 10}) {
    const Base base(b);
    const std::uint64_t x = 3000;
    const ReversedPrimeSet set(x, base);
    const auto& S = set.sorted();
    std::vector<bool> pair(x + 1, false);
    for (std::size_t i = 0; i < S.size(); ++i) {
      for (std::size_t j = i; j < S.size() && S[i] + S[j] <= x; ++j) pair[S[i] + S[j]] = true;
    }
    for (std::uint64_t N = 2; N <= x; ++N) {
      unsigned want = 0;
      if (set.contains(N)) {
        want = 1;
      } else if (pair[N]) {
        want = 2;
      } else {
        for (std::size_t i = 0; i < S.size() && S[i] < N && want == 0; ++i) want = pair[N - S[i]] ? 3 : 0;
      }
      const MinKResult r = min_k_representation(N, set, 4);
      if (want != 0) {
        REQUIRE(r.k == want);
      } else if (r.k) {
        REQUIRE(*r.k == 4);
      }
      if (r.k) REQUIRE(witness_ok(r, N, b));
      if (b == 2 && N % 2 == 1) REQUIRE(r.k.value_or(1) % 2 == 1);  // every base-2 reversed prime is odd
    }
  }
}

TEST_CASE("scan_min_k") {
  const Base ten(10);
  const ScanReport rep = scan_min_k(2, 5000, ten, 4, 1);
  CHECK(std::accumulate(rep.histogram.begin(), rep.histogram.end(), std::uint64_t{0}) == 4999);
  CHECK(rep.failures.size() == rep.histogram[0]);
  const ScanReport again = scan_min_k(2, 5000, ten, 4, 4);
  CHECK(again.min_k == rep.min_k);
  CHECK(again.histogram == rep.histogram);
  for (std::uint64_t N = 2; N <= 5000; ++N) {
    const std::uint8_t k = rep.min_k[N - 2];
    REQUIRE(k == (min_k_representation(N, ten, 4).k.value_or(0)));
  }
  const ScanReport prime_base = scan_min_k(10000, 12000, Base(7), 4);
  std::uint64_t evens_k2 = 0, evens = 0;
  for (std::uint64_t j = 0; j < prime_base.min_k.size(); ++j) {
    if ((10000 + j) % 2 == 0) {
      ++evens;
      evens_k2 += prime_base.min_k[j] <= 2;
    }
  }
  MESSAGE("b=7 even N in [1e4, 1.2e4] with k <= 2: " << evens_k2 << " of " << evens);
  CHECK_THROWS_AS(scan_min_k(1, 10, ten, 3), DomainError);
  CHECK_THROWS_AS(scan_min_k(10, 5, ten, 3), DomainError);
}
