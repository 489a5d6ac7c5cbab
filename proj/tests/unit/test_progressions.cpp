#include <doctest.h>

#include <cmath>

#include "revprime/error.hpp"
#include "revprime/progressions.hpp"
#include "revprime/verify/oracles.hpp"

using namespace revprime;

namespace {

double oracle_theta(std::uint64_t x, std::uint64_t a, std::uint64_t q, std::uint64_t b) {
  double s = 0.0;
  for (const auto& r : verify::reversed_primes_oracle(x, b, true)) {
    if (r.n % q == a % q) s += std::log(static_cast<double>(r.p));
  }
  return s;
}

}  // namespace

TEST_CASE("progression_density") {
  const Base ten(10);
  CHECK(progression_density(1, 1, ten) == 1.0);
  CHECK(progression_density(0, 2, ten) == 0.0);
  CHECK(progression_density(1, 3, ten) == doctest::Approx(3.0 / 2.0 / 3.0));
  CHECK(progression_density(1, 7, ten) == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("theta_star_L examples") {
  const Base ten(10);
  const APResult zero = theta_star_L(4, 0, 2, ten);
  CHECK(zero.observed == 0.0);
  CHECK(zero.main_term == 0.0);
  CHECK(std::isnan(zero.ratio));

  double want = 0.0;
  for (const auto& r : verify::reversed_primes_oracle(999, 10, true)) {
    if (r.n >= 100) want += std::log(static_cast<double>(r.p));
  }
  CHECK(theta_star_L(3, 0, 1, ten).observed == doctest::Approx(want).epsilon(1e-13));

  const APResult r = theta_star_L(4, 1, 3, ten);
  CHECK(std::fabs(r.ratio - 1.0) < 0.25);
  CHECK(r.main_term == doctest::Approx(0.4 * 0.5 * 10000.0));
  CHECK_THROWS_AS(theta_star_L(3, 1, 0, ten), DomainError);
}

TEST_CASE("theta_star_x examples") {
  const Base ten(10);
  CHECK(theta_star_x(100, 0, 1, ten).observed == doctest::Approx(oracle_theta(100, 0, 1, 10)).epsilon(1e-14));
  CHECK(theta_star_x(12345, 0, 2, ten).observed == 0.0);
  CHECK(theta_star_x(12345, 0, 2, ten).raw_count == 0);
  const APResult r = theta_star_x(1000000, 1, 9, ten);
  CHECK(r.main_term == doctest::Approx(progression_density(1, 9, ten) * static_cast<double>(count_B(1000000, ten))));
  CHECK(r.within_q_range);
  CHECK_FALSE(theta_star_x(1000, 1, 97, ten).within_q_range);
  CHECK_THROWS_AS(theta_star_x(0, 1, 1, ten), DomainError);
}

TEST_CASE("the x = 1e4..1e6 trend at (a, q) = (1, 9) is recorded") {
  const Base ten(10);
  double previous = 1e9;
  for (const std::uint64_t x : {10000, 100000, 1000000}) {
    const double dev = std::fabs(theta_star_x(x, 1, 9, ten).ratio - 1.0);
    MESSAGE("x=" << x << " |ratio-1|=" << dev);
    CHECK(dev < 1.5 * previous);
    previous = dev;
  }
}

TEST_CASE("residue table equals single queries bit for bit") {
  const Base ten(10);
  const auto records = enumerate_reversed_primes(200000, ten, true);
  for (const std::uint64_t q : {1, 4, 9, 11, 30}) {
    const auto cells = theta_star_x_residues(100000, q, ten, records);
    const auto fresh = theta_star_x_residues(100000, q, ten);
    for (std::uint64_t a = 0; a < q; ++a) {
      const APResult one = theta_star_x(100000, static_cast<std::int64_t>(a), q, ten);
      REQUIRE(cells[a].observed == one.observed);
      REQUIRE(cells[a].raw_count == one.raw_count);
      REQUIRE(fresh[a].observed == one.observed);
    }
  }
}

TEST_CASE("property: residues add up and rho = 0 classes are empty") {
  for (const std::uint64_t b : {6, 10}) {
    const Base base(b);
    for (const std::uint64_t x : {1000, 100000}) {
      const double total = theta_star_x(x, 0, 1, base).observed;
      for (std::uint64_t q = 1; q <= 30; ++q) {
        const auto cells = theta_star_x_residues(x, q, base);
        double sum = 0.0;
        std::uint64_t count = 0;
        for (std::uint64_t a = 0; a < q; ++a) {
          count += cells[a].raw_count;
          sum += cells[a].observed;
          if (rho(static_cast<std::int64_t>(a), q, base) == 0) {
            REQUIRE(cells[a].observed == 0.0);
            REQUIRE(cells[a].main_term == 0.0);
          }
        }
        REQUIRE(count == theta_star_x(x, 0, 1, base).raw_count);
        REQUIRE(sum == doctest::Approx(total).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("theta_star_partitioned examples") {
  const Base ten(10);
  // rev 2 = 2 shares a factor with 10: the window carries no main term.
  const APResult bad = theta_star_partitioned(4, 1, 2, 1, 1, ten);
  CHECK(bad.main_term == 0.0);
  CHECK(bad.observed <= 4 * std::log(10.0));

  double want = 0.0;
  for (const auto& r : verify::reversed_primes_oracle(399, 10, true)) {
    if (r.n >= 300) want += std::log(static_cast<double>(r.p));
  }
  CHECK(theta_star_partitioned(3, 1, 3, 0, 1, ten).observed == doctest::Approx(want).epsilon(1e-13));

  const APResult point = theta_star_partitioned(3, 3, 113, 0, 1, ten);
  CHECK(point.observed == doctest::Approx(std::log(311.0)));
  CHECK(point.raw_count == 1);
  CHECK(theta_star_partitioned(3, 3, 114, 0, 1, ten).raw_count == 0);

  CHECK_THROWS_AS(theta_star_partitioned(3, 1, 0, 0, 1, ten), DomainError);
  CHECK_THROWS_AS(theta_star_partitioned(3, 1, 10, 0, 1, ten), DomainError);
  CHECK_THROWS_AS(theta_star_partitioned(3, 4, 1000, 0, 1, ten), DomainError);
}

TEST_CASE("aggregate_check examples") {
  CHECK(aggregate_check(3, 0, 1, Base(10)));
  CHECK(aggregate_check(4, 2, 5, Base(10)));
  CHECK(aggregate_check(3, 1, 4, Base(6)));
  CHECK(aggregate_check(1, 1, 1, Base(10)));
}
