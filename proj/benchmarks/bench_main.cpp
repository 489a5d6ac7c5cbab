#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "revprime/circle.hpp"
#include "revprime/convolution.hpp"
#include "revprime/digits.hpp"
#include "revprime/representations.hpp"
#include "revprime/sieve.hpp"

using namespace revprime;

namespace {

std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.0, 20.0);
  std::vector<double> out(n);
  for (auto& x : out) x = w(rng);
  return out;
}

void BM_Sieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(limit, threads).count());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Sieve)->Args({1 << 20, 1})->Args({1 << 24, 1})->Args({1 << 24, 0})->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  const Base ten(10);
  const auto x = static_cast<std::uint64_t>(state.range(0));
  const auto table = sieve_primes(reversal_table_limit(x, ten));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_reversed_primes(x, ten, true, table).size());
}
BENCHMARK(BM_Enumerate)->Arg(100000)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_ConvolveDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = random_weights(n, 1), v = random_weights(n, 2);
  ConvolutionOptions opts;
  opts.direct_crossover = 2 * n;
  for (auto _ : state) benchmark::DoNotOptimize(convolve(u, v, opts).values.data());
}
BENCHMARK(BM_ConvolveDirect)->RangeMultiplier(4)->Range(64, 4096);

void BM_ConvolveFFT(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = random_weights(n, 1), v = random_weights(n, 2);
  ConvolutionOptions opts;
  opts.force_fft = true;
  for (auto _ : state) benchmark::DoNotOptimize(convolve(u, v, opts).values.data());
}
BENCHMARK(BM_ConvolveFFT)->RangeMultiplier(4)->Range(64, 1 << 20);

void BM_ConvolveExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::vector<std::uint64_t> u(n), v(n);
  for (auto& x : u) x = rng() % 2;
  for (auto& x : v) x = rng() % 2;
  for (auto _ : state) benchmark::DoNotOptimize(convolve_exact(u, v).data());
}
BENCHMARK(BM_ConvolveExact)->RangeMultiplier(4)->Range(1024, 1 << 20)->Unit(benchmark::kMicrosecond);

void BM_CountB(benchmark::State& state) {
  const Base base(static_cast<std::uint64_t>(state.range(0)));
  std::uint64_t x = 1;
  for (auto _ : state) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    benchmark::DoNotOptimize(count_B(x >> 8, base));
  }
}
BENCHMARK(BM_CountB)->Arg(2)->Arg(10)->Arg(1000);

void BM_ExpSum(benchmark::State& state) {
  const Base ten(10);
  const ExponentialSum sum(static_cast<std::uint64_t>(state.range(0)), SumKind::reversed_prime_coprime, ten);
  double alpha = 0.1234;
  for (auto _ : state) {
    alpha = std::fmod(alpha + 0.61803398874989485, 1.0);
    benchmark::DoNotOptimize(sum(alpha));
  }
  state.counters["terms"] = static_cast<double>(sum.terms());
}
BENCHMARK(BM_ExpSum)->Arg(100000)->Arg(1000000);

void BM_R11Profile(benchmark::State& state) {
  const Base ten(10);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(R_profiles(n, Family::R11, 2, ten).size());
}
BENCHMARK(BM_R11Profile)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
