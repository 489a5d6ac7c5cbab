#include <doctest.h>

#include <cmath>
#include <random>

#include "revprime/convolution.hpp"
#include "revprime/error.hpp"
#include "revprime/sieve.hpp"

using namespace revprime;

namespace {

std::vector<double> naive(const std::vector<double>& u, const std::vector<double>& v) {
  std::vector<double> out(u.size() + v.size() - 1, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i + j] += u[i] * v[j];
  }
  return out;
}

}  // namespace

TEST_CASE("unit impulses") {
  const std::vector<double> d{0, 1};
  const Convolution c = convolve(d, d);
  REQUIRE(c.values.size() == 3);
  CHECK(c.values[2] == 1.0);
  CHECK(c.values[0] == 0.0);
  CHECK(c.path == ConvolutionPath::direct);
}

TEST_CASE("prime weights at index 10") {
  const auto p = weighted_indicator(10, Base(10), SequenceKind::prime);
  const Convolution c = convolve(p.weights, p.weights);
  const double want = 2 * std::log(3.0) * std::log(7.0) + std::log(5.0) * std::log(5.0);
  CHECK(std::fabs(c.values[10] - want) <= c.error_bound + 1e-15 * want);
  ConvolutionOptions fft;
  fft.force_fft = true;
  const Convolution f = convolve(p.weights, p.weights, fft);
  CHECK(f.path == ConvolutionPath::fft);
  CHECK(std::fabs(f.values[10] - want) <= f.error_bound);
}

TEST_CASE("max_length truncates") {
  const std::vector<double> u(100, 1.0);
  ConvolutionOptions o;
  o.max_length = 50;
  CHECK(convolve(u, u, o).values.size() == 50);
}

TEST_CASE("property: FFT agrees with the direct sum within the reported bound") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> w(0.0, 16.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = trial < 90 ? 64 + rng() % 900 : 4096;
    std::vector<double> u(n), v(n);
    for (auto& x : u) x = w(rng) * (rng() % 3 == 0);
    for (auto& x : v) x = w(rng);
    const auto want = naive(u, v);
    ConvolutionOptions fft;
    fft.force_fft = true;
    const Convolution f = convolve(u, v, fft);
    REQUIRE(f.values.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) REQUIRE(std::fabs(f.values[i] - want[i]) <= f.error_bound);
    const Convolution d = convolve(u, v);
    const bool big = 2 * n - 1 > ConvolutionOptions{}.direct_crossover;
    CHECK(d.path == (big ? ConvolutionPath::fft : ConvolutionPath::direct));
    for (std::size_t i = 0; i < want.size(); ++i) REQUIRE(std::fabs(d.values[i] - want[i]) <= d.error_bound);
  }
}

TEST_CASE("propagated_bound scales by the l1 norm") {
  const std::vector<double> x{1, -2, 3};
  CHECK(propagated_bound(0.5, x) == doctest::Approx(3.0));
}

TEST_CASE("convolve_exact reproduces integer convolutions") {
  std::mt19937_64 rng(11);
  for (const std::size_t n : {5u, 300u, 3000u, 70000u}) {
    std::vector<std::uint64_t> u(n), v(n);
    for (auto& x : u) x = rng() % 1000;
    for (auto& x : v) x = rng() % 2;
    const auto got = convolve_exact(u, v);
    REQUIRE(got.size() == 2 * n - 1);
    // spot-check against a direct sum
    for (int k = 0; k < 50; ++k) {
      const std::size_t idx = rng() % got.size();
      std::uint64_t want = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (idx >= i && idx - i < n) want += u[i] * v[idx - i];
      }
      REQUIRE(got[idx] == want);
    }
    CHECK(convolve_exact(u, v, 0, 1) == convolve_exact(u, v, 0, 3));
  }
}

TEST_CASE("convolve_exact handles coefficients beyond 2^53") {
  const std::vector<std::uint64_t> u(4, std::uint64_t{1} << 40), v(4, std::uint64_t{1} << 20);
  const auto got = convolve_exact(u, v);
  CHECK(got[3] == 4 * (std::uint64_t{1} << 60));
  const std::vector<std::uint64_t> huge(4, std::uint64_t{1} << 62);
  CHECK_THROWS_AS(convolve_exact(huge, huge), ResourceError);
}

TEST_CASE("empty operands") {
  const std::vector<double> none;
  const std::vector<double> one{1.0};
  CHECK(convolve(none, one).values.empty());
  CHECK(convolve_exact(std::vector<std::uint64_t>{}, std::vector<std::uint64_t>{1}).empty());
}
