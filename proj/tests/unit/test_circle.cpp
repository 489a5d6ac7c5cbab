#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "revprime/arithmetic.hpp"
#include "revprime/circle.hpp"
#include "revprime/error.hpp"
#include "revprime/verify/fixtures.hpp"
#include "revprime/verify/oracles.hpp"

using namespace revprime;

namespace {

const verify::Fixtures& fixtures() {
  static const verify::Fixtures fx = verify::Fixtures::load(REVPRIME_FIXTURES_PATH);
  return fx;
}

}  // namespace

TEST_CASE("exp_sum at alpha = 0 and 1/2") {
  const Base ten(10);
  CHECK(exp_sum(0.0, 1000, SumKind::all, ten).real() == doctest::Approx(1000.0));
  CHECK(exp_sum(0.0, 1000, SumKind::B_set, ten).real() == doctest::Approx(static_cast<double>(count_B(1000, ten))));
  const auto half = exp_sum(0.5, 10, SumKind::prime, ten);
  CHECK(half.real() == doctest::Approx(std::log(2.0) - std::log(3.0) - std::log(5.0) - std::log(7.0)));
  CHECK(std::fabs(half.imag()) < 1e-12);
  CHECK_THROWS_AS(exp_sum(0.1, 0, SumKind::all, ten), DomainError);
}

TEST_CASE("exp_sum matches a direct oracle sum") {
  const Base ten(10);
  const double alpha = 0.318309886;
  std::complex<long double> want = 0;
  for (const auto& r : verify::reversed_primes_oracle(5000, 10, true)) {
    const long double t = static_cast<long double>(r.n) * alpha;
    const long double th = 2 * std::numbers::pi_v<long double> * (t - std::floor(t));
    want += std::log(static_cast<long double>(r.p)) * std::complex<long double>(std::cos(th), std::sin(th));
  }
  const auto got = exp_sum(alpha, 5000, SumKind::reversed_prime_coprime, ten);
  CHECK(std::fabs(got.real() - static_cast<double>(want.real())) < 1e-9);
  CHECK(std::fabs(got.imag() - static_cast<double>(want.imag())) < 1e-9);
}

TEST_CASE("property: conjugate symmetry and periodicity") {
  const Base ten(10);
  std::mt19937_64 rng(3);
  for (const SumKind kind : {SumKind::prime, SumKind::reversed_prime_coprime, SumKind::all, SumKind::B_set}) {
    const ExponentialSum s(10000, kind, ten);
    for (int i = 0; i < 50; ++i) {
      // 52-bit draws keep alpha + 1 exact.
      const double alpha = static_cast<double>(rng() >> 12) * 0x1p-52;
      const auto a = s(alpha);
      const auto c = s(1.0 - alpha);
      const double scale = 1e-9 * (1.0 + std::abs(a));
      REQUIRE(std::fabs(a.real() - c.real()) <= scale);
      REQUIRE(std::fabs(a.imag() + c.imag()) <= scale);
      REQUIRE(s(alpha + 1.0) == a);
    }
    CHECK(s(0.25 + 1.0) == s(0.25));
    CHECK(s(0.25 + 7.0) == s(0.25));
  }
}

TEST_CASE("evaluate is independent of the thread count") {
  const ExponentialSum s(20000, SumKind::prime, Base(10));
  std::vector<double> alphas;
  for (int j = 0; j < 64; ++j) alphas.push_back(j / 64.0);
  CHECK(s.evaluate(alphas, 1) == s.evaluate(alphas, 4));
  CHECK(s.evaluate(alphas, 1)[5] == s(5 / 64.0));
}

TEST_CASE("build_arcs") {
  const ArcPartition p = build_arcs(1000000, 1.0);
  CHECK(p.Q == doctest::Approx(std::log(1e6)));
  std::uint64_t max_q = 0, expected = 1;  // a = 0 and a = 1 both appear for q = 1
  for (const auto& a : p.arcs) max_q = std::max(max_q, a.q);
  for (std::uint64_t q = 1; q <= 13; ++q) expected += totient(q);
  CHECK(max_q == 13);
  CHECK(p.arcs.size() == expected);
  CHECK(p.arcs.front().lo == 0.0);
  CHECK(p.arcs.front().hi == doctest::Approx(p.Q / 1e6));
  CHECK(p.arcs.back().hi == 1.0);
  CHECK(p.arcs.back().lo == doctest::Approx(1.0 - p.Q / 1e6));
  CHECK(p.measure < 1.0);
  for (std::size_t i = 1; i < p.arcs.size(); ++i) REQUIRE(p.arcs[i - 1].hi < p.arcs[i].lo);
  CHECK(p.locate(1.0 / 3.0)->q == 3);
  CHECK(p.locate(1.0 / 3.0 + 0.9 * p.halfwidth)->a == 1);
  CHECK_FALSE(p.in_major(1.0 / 3.0 + 1.1 * p.halfwidth));
  CHECK_THROWS_AS(build_arcs(15, 1.0), DomainError);
  CHECK_THROWS_AS(build_arcs(1000, 0.5), DomainError);
  CHECK_THROWS_AS(build_arcs(100, 3.0), DomainError);
}

TEST_CASE("property: arcs are disjoint and counted for several (N, B)") {
  for (const std::uint64_t N : {10000, 100000, 1000000}) {
    for (const double B : {1.0, 1.5, 2.0}) {
      ArcPartition p;
      try {
        p = build_arcs(N, B);
      } catch (const DomainError&) {
        continue;  // too small an N for this B
      }
      std::uint64_t expected = 1;
      for (std::uint64_t q = 1; q <= static_cast<std::uint64_t>(std::floor(p.Q)); ++q) expected += totient(q);
      CHECK(p.arcs.size() == expected);
      for (std::size_t i = 1; i < p.arcs.size(); ++i) REQUIRE(p.arcs[i - 1].hi < p.arcs[i].lo);
    }
  }
}

TEST_CASE("major_arc_residual") {
  const Base ten(10);
  const std::uint64_t N = 100000;
  double theta = 0.0;
  for (const auto p : verify::primes_td(N)) theta += std::log(static_cast<double>(p));
  CHECK(major_arc_residual(0.0, 0, 1, N, 1.0, ten, ArcSum::S) == doctest::Approx(std::fabs(theta / N - 1.0)).epsilon(1e-9));
  // 7 does not divide 990, so the prediction on the arc at 1/7 is zero.
  const double r = major_arc_residual(1.0 / 7.0, 1, 7, N, 1.0, ten, ArcSum::revS);
  CHECK(r == doctest::Approx(std::abs(exp_sum(1.0 / 7.0, N, SumKind::reversed_prime_coprime, ten)) / N));
  CHECK_THROWS_AS(major_arc_residual(0.3, 1, 7, N, 1.0, ten, ArcSum::revS), DomainError);
  CHECK_THROWS_AS(major_arc_residual(0.5, 2, 4, N, 1.0, ten, ArcSum::S), DomainError);
  for (const std::uint64_t n : {10000, 100000, 1000000}) {
    MESSAGE("N=" << n << " residual at 1/3: " << major_arc_residual(1.0 / 3.0, 1, 3, n, 1.0, ten, ArcSum::revS));
  }
}

TEST_CASE("weyl_ratio") {
  const Base ten(10);
  CHECK(weyl_ratio(0.5, 1000, ten, SumKind::all) <= 0.5);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const double beta = static_cast<double>(rng() >> 11) * 0x1p-53;
    if (beta == 0.0) continue;
    REQUIRE(weyl_ratio(beta, 10000, ten, SumKind::all) <= 1.0);
  }
  CHECK_THROWS_AS(weyl_ratio(0.0, 1000, ten, SumKind::all), DomainError);
  CHECK_THROWS_AS(weyl_ratio(2.0, 1000, ten, SumKind::all), DomainError);
  CHECK_THROWS_AS(weyl_ratio(0.3, 1000, ten, SumKind::prime), DomainError);
}

TEST_CASE("weyl_probe reproduces the oracle maximum") {
  const double got = weyl_probe(100000, Base(10), SumKind::B_set, 1000, 20240601);
  CHECK(got == doctest::Approx(fixtures().get("weyl.bset_max.100000")).epsilon(1e-9));
  CHECK(weyl_probe(100000, Base(10), SumKind::B_set, 1000, 20240601, 1) == weyl_probe(100000, Base(10), SumKind::B_set, 1000, 20240601, 3));
}

TEST_CASE("parseval_check") {
  const Base ten(10);
  const ParsevalResult small = parseval_check(40, ten);
  double want = 0.0;
  for (const auto& r : verify::reversed_primes_oracle(40, 10, true)) want += std::pow(std::log(static_cast<double>(r.p)), 2);
  CHECK(small.lhs == doctest::Approx(want).epsilon(1e-14));
  CHECK(small.M == 128);
  for (const std::uint64_t N : {1000, 10000}) {
    const ParsevalResult p = parseval_check(N, ten);
    CHECK(std::fabs(p.lhs - p.rhs) <= 1e-6 * p.lhs);
    CHECK(p.normalized == doctest::Approx(fixtures().get("parseval.ratio." + std::to_string(N))).epsilon(1e-9));
  }
  CHECK(parseval_check(100000, ten).normalized == doctest::Approx(fixtures().get("parseval.ratio.100000")).epsilon(1e-9));
}

TEST_CASE("minor_arc_probe") {
  const Base ten(10);
  const MinorArcReport r = minor_arc_probe(100000, 1.0, ten, 100, 20240601);
  CHECK(r.max_abs_over_N == doctest::Approx(fixtures().get("minor_arc.max.100000")).epsilon(1e-9));
  REQUIRE(r.scaled.size() == r.A.size());
  for (std::size_t i = 1; i < r.scaled.size(); ++i) CHECK(r.scaled[i] >= r.scaled[i - 1]);
  // Wider arcs make the sampler reject draws that land on them.
  const MinorArcReport wide = minor_arc_probe(100000, 1.4, ten, 50, 1);
  CHECK(wide.rejected > 0);
  CHECK_THROWS_AS(minor_arc_probe(100000, 2.0, ten, 50, 1), DomainError);
  CHECK_THROWS_AS(minor_arc_probe(100000, 1.0, ten, 0, 1), DomainError);
}

TEST_CASE("gamma_sigma") {
  WeaklyDigitalSeed zero{10, std::vector<std::vector<double>>(4, std::vector<double>(10, 0.0))};
  const GammaSigma z = gamma_sigma(zero, 3);
  CHECK(z.gammas == std::vector<double>{0, 0, 0});
  CHECK(z.sigma == 0.0);

  // Integer-valued maps make b alpha_i - alpha_{i+1} integral on every digit.
  WeaklyDigitalSeed integral{10, {}};
  for (int i = 0; i < 4; ++i) {
    std::vector<double> m(10);
    for (int d = 0; d < 10; ++d) m[d] = static_cast<double>(d * (i + 1));
    integral.maps.push_back(m);
  }
  const GammaSigma g = gamma_sigma(integral, 3);
  for (double x : g.gammas) CHECK(x == 0.0);

  const GammaSigma rev = gamma_sigma(reversal_seed(Base(10), 1, 3, 0, 1, 10), 9);
  CHECK(rev.gammas.size() == 9);
  CHECK(rev.sigma > 0.0);
  double total = 0.0;
  for (double x : rev.gammas) total += x;
  CHECK(rev.sigma == doctest::Approx(total));
  CHECK_THROWS_AS(gamma_sigma(zero, 4), DomainError);
}

TEST_CASE("gamma formula on a hand-checked seed") {
  // b = 2: u(d) = 2 alpha_0(d) - alpha_1(d); only the pair (0, 1) contributes.
  WeaklyDigitalSeed s{2, {{0.0, 0.3}, {0.0, 0.0}}};
  const GammaSigma g = gamma_sigma(s, 1);
  const double dist = 0.4;  // ||0.6 - 0|| = 0.4
  const double want = 2 * std::log(2.0) / (2 * 1 * 16 * std::log(2.0) * std::log(2.0)) * dist * dist;
  CHECK(g.gammas[0] == doctest::Approx(want));
}

TEST_CASE("reversal_seed and reverse_padded") {
  const Base ten(10);
  CHECK(reverse_padded(12, 4, ten) == 2100);
  CHECK(reverse_padded(1867, 4, ten) == 7681);
  const WeaklyDigitalSeed s = reversal_seed(ten, 1, 3, 1, 7, 3);
  REQUIRE(s.maps.size() == 3);
  // Digit n at position i: (1/3) n 10^(2-i) + (1/7) n 10^i mod 1.
  for (int i = 0; i < 3; ++i) {
    for (int n = 0; n < 10; ++n) {
      const double t = n * std::pow(10.0, 2 - i) / 3.0 + n * std::pow(10.0, i) / 7.0;
      CHECK(s.maps[i][n] == doctest::Approx(t - std::floor(t)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(reversal_seed(ten, 1, 0, 1, 1, 3), DomainError);
}

TEST_CASE("dist_to_int") {
  CHECK(dist_to_int(0.3) == doctest::Approx(0.3));
  CHECK(dist_to_int(0.7) == doctest::Approx(0.3));
  CHECK(dist_to_int(-1.25) == doctest::Approx(0.25));
  CHECK(dist_to_int(3.0) == 0.0);
}
