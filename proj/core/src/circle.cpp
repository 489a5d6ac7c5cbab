#include "revprime/circle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "revprime/arithmetic.hpp"
#include "revprime/error.hpp"
#include "revprime/parallel.hpp"
#include "revprime/sieve.hpp"

namespace revprime {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

u128 pow_mod(u128 b, std::uint64_t e, std::uint64_t m) {
  u128 r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

double dist_to_int(double x) noexcept { return std::fabs(x - std::nearbyint(x)); }

ExponentialSum::ExponentialSum(std::uint64_t x, SumKind kind, const Base& base) : x_(x) {
  if (x == 0) throw DomainError("exponential sums need x >= 1");
  if (x > kMaxSequenceIndex) throw ResourceError("exponential sum length exceeds 2^31", x * 16);
  switch (kind) {
    case SumKind::prime: {
      const auto table = PrimeTableCache::global().at_least(std::max<std::uint64_t>(x, 2));
      table->for_each_prime(2, x, [&](std::uint64_t p) {
        n_.push_back(p);
        w_.push_back(std::log(static_cast<double>(p)));
      });
      break;
    }
    case SumKind::reversed_prime_coprime:
      for (const auto& rec : enumerate_reversed_primes(x, base, true)) {
        n_.push_back(rec.n);
        w_.push_back(rec.weight);
      }
      break;
    case SumKind::all:
      n_.resize(x);
      std::iota(n_.begin(), n_.end(), std::uint64_t{1});
      w_.assign(x, 1.0);
      break;
    case SumKind::B_set:
      for (std::uint64_t n = 1; n <= x; ++n) {
        if (base.coprime_to_base(leading_digit(n, base))) n_.push_back(n);
      }
      w_.assign(n_.size(), 1.0);
      break;
  }
}

std::complex<double> ExponentialSum::operator()(double alpha) const {
  const double a = alpha - std::floor(alpha);
  Kahan re, im;
  for (std::size_t i = 0; i < n_.size(); ++i) {
    double t = static_cast<double>(n_[i]) * a;
    t -= std::floor(t);
    const double theta = kTwoPi * t;
    re.add(w_[i] * std::cos(theta));
    im.add(w_[i] * std::sin(theta));
  }
  return {re.sum, im.sum};
}

std::vector<std::complex<double>> ExponentialSum::evaluate(const std::vector<double>& alphas, unsigned threads) const {
  std::vector<std::complex<double>> out(alphas.size());
  parallel_for(alphas.size(), threads, [&](std::size_t i) { out[i] = (*this)(alphas[i]); });
  return out;
}

double ExponentialSum::square_sum() const noexcept {
  Kahan s;
  for (double w : w_) s.add(w * w);
  return s.sum;
}

std::complex<double> exp_sum(double alpha, std::uint64_t x, SumKind kind, const Base& base) {
  return ExponentialSum(x, kind, base)(alpha);
}

std::optional<Arc> ArcPartition::locate(double alpha) const {
  if (alpha < 0.0 || alpha > 1.0) return std::nullopt;
  const auto it = std::upper_bound(arcs.begin(), arcs.end(), alpha,
                                   [](double v, const Arc& arc) { return v < arc.center; });
  // Arcs are disjoint, so only the neighbours on either side can hold alpha.
  if (it != arcs.end() && std::fabs(alpha - it->center) <= halfwidth) return *it;
  if (it != arcs.begin() && std::fabs(alpha - std::prev(it)->center) <= halfwidth) return *std::prev(it);
  return std::nullopt;
}

ArcPartition build_arcs(std::uint64_t N, double B) {
  if (N < 16) throw DomainError("build_arcs needs N >= 16");
  if (!(B >= 1.0)) throw DomainError("build_arcs needs B >= 1");
  ArcPartition part;
  part.N = N;
  part.B = B;
  part.Q = std::pow(std::log(static_cast<double>(N)), B);
  part.halfwidth = part.Q / static_cast<double>(N);
  const auto qmax = static_cast<std::uint64_t>(std::floor(part.Q));
  if (qmax > 100000) throw ResourceError("Q = (log N)^B is too large for an explicit arc list");
  for (std::uint64_t q = 1; q <= qmax; ++q) {
    for (std::uint64_t a = 0; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      Arc arc;
      arc.a = a;
      arc.q = q;
      arc.center = static_cast<double>(a) / static_cast<double>(q);
      arc.lo = std::max(0.0, arc.center - part.halfwidth);
      arc.hi = std::min(1.0, arc.center + part.halfwidth);
      part.arcs.push_back(arc);
    }
  }
  std::sort(part.arcs.begin(), part.arcs.end(), [](const Arc& l, const Arc& r) { return l.center < r.center; });
  for (std::size_t i = 0; i + 1 < part.arcs.size(); ++i) {
    if (!(part.arcs[i].hi < part.arcs[i + 1].lo)) {
      throw DomainError("major arcs around " + std::to_string(part.arcs[i].a) + "/" + std::to_string(part.arcs[i].q) +
                        " and " + std::to_string(part.arcs[i + 1].a) + "/" + std::to_string(part.arcs[i + 1].q) +
                        " overlap; N=" + std::to_string(N) + " is too small for B");
    }
  }
  for (const auto& arc : part.arcs) part.measure += arc.hi - arc.lo;
  return part;
}

double major_arc_residual(double alpha, std::uint64_t a, std::uint64_t q, std::uint64_t N, double B,
                          const Base& base, ArcSum which) {
  if (N < 2) throw DomainError("major_arc_residual needs N >= 2");
  if (q == 0 || a > q || std::gcd(a, q) != 1) throw DomainError("arc label needs q >= 1, 0 <= a <= q, gcd(a, q) = 1");
  const double Q = std::pow(std::log(static_cast<double>(N)), B);
  const double width = Q / static_cast<double>(N);
  const double center = static_cast<double>(a) / static_cast<double>(q);
  if (static_cast<double>(q) > Q || alpha < 0.0 || alpha > 1.0 || std::fabs(alpha - center) > width) {
    throw DomainError("alpha is not on the major arc around " + std::to_string(a) + "/" + std::to_string(q));
  }
  const double beta = alpha - center;
  const int mu = mobius(q);
  const double e_q = static_cast<double>(mu) / static_cast<double>(totient(q));
  std::complex<double> lhs, predicted;
  if (which == ArcSum::S) {
    lhs = exp_sum(alpha, N, SumKind::prime, base);
    predicted = mu == 0 ? 0.0 : e_q * exp_sum(beta, N, SumKind::all, base);
  } else {
    lhs = exp_sum(alpha, N, SumKind::reversed_prime_coprime, base);
    const bool divides = base.modulus() % q == 0;
    predicted = (mu == 0 || !divides) ? 0.0 : e_q * exp_sum(beta, N, SumKind::B_set, base);
  }
  return std::abs(lhs - predicted) / static_cast<double>(N);
}

double weyl_ratio(double beta, std::uint64_t N, const Base& base, SumKind kind) {
  const double d = dist_to_int(beta);
  if (d == 0.0) throw DomainError("weyl_ratio needs a non-integer beta");
  if (kind == SumKind::all) return std::abs(exp_sum(beta, N, kind, base)) * d;
  if (kind == SumKind::B_set) return std::abs(exp_sum(beta, N, kind, base)) * d / std::log(static_cast<double>(N));
  throw DomainError("weyl_ratio is defined for kinds all and B_set");
}

double weyl_probe(std::uint64_t N, const Base& base, SumKind kind, unsigned samples, std::uint64_t seed,
                  unsigned threads) {
  if (kind != SumKind::all && kind != SumKind::B_set) throw DomainError("weyl_probe is defined for kinds all and B_set");
  const ExponentialSum sum(N, kind, base);
  std::mt19937_64 rng(seed);
  std::vector<double> betas;
  for (unsigned s = 0; s < samples; ++s) {
    const double beta = unit_draw(rng);
    if (beta != 0.0) betas.push_back(beta);
  }
  const auto values = sum.evaluate(betas, threads);
  const double scale = kind == SumKind::B_set ? std::log(static_cast<double>(N)) : 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    worst = std::max(worst, std::abs(values[i]) * dist_to_int(betas[i]) / scale);
  }
  return worst;
}

ParsevalResult parseval_check(std::uint64_t N, const Base& base) {
  if (N < 2) throw DomainError("parseval_check needs N >= 2");
  const ExponentialSum sum(N, SumKind::reversed_prime_coprime, base);
  ParsevalResult out;
  out.lhs = sum.square_sum();
  std::uint64_t M = 1;
  while (M < 2 * N + 1) M <<= 1;
  out.M = M;

  static std::mutex planner;
  double* in = fftw_alloc_real(M);
  fftw_complex* spec = fftw_alloc_complex(M / 2 + 1);
  if (in == nullptr || spec == nullptr) {
    fftw_free(in);
    fftw_free(spec);
    throw ResourceError("cannot allocate the Parseval DFT", M * 24);
  }
  fftw_plan plan;
  {
    std::lock_guard lock(planner);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(M), in, spec, FFTW_ESTIMATE);
  }
  std::fill(in, in + M, 0.0);
  for (std::size_t i = 0; i < sum.terms(); ++i) in[sum.indices()[i]] = sum.weights()[i];
  fftw_execute(plan);
  // |F_j|^2 is even in j, so the half spectrum counts twice except at 0 and M/2.
  Kahan total;
  for (std::uint64_t j = 0; j <= M / 2; ++j) {
    const double mag = spec[j][0] * spec[j][0] + spec[j][1] * spec[j][1];
    total.add((j == 0 || j == M / 2) ? mag : 2.0 * mag);
  }
  {
    std::lock_guard lock(planner);
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(spec);
  out.rhs = total.sum / static_cast<double>(M);
  out.normalized = out.lhs / (static_cast<double>(N) * std::log(static_cast<double>(N)));
  return out;
}

MinorArcReport minor_arc_probe(std::uint64_t N, double B, const Base& base, unsigned samples, std::uint64_t seed,
                               const std::vector<double>& A_grid, unsigned threads) {
  if (samples == 0) throw DomainError("minor_arc_probe needs samples >= 1");
  const ArcPartition arcs = build_arcs(N, B);
  if (arcs.measure >= 1.0) throw DomainError("the major arcs cover [0, 1]; no minor arc to sample");
  const ExponentialSum sum(N, SumKind::reversed_prime_coprime, base);
  MinorArcReport rep;
  rep.N = N;
  rep.B = B;
  rep.samples = samples;
  rep.A = A_grid;
  std::mt19937_64 rng(seed);
  std::vector<double> alphas;
  while (alphas.size() < samples) {
    const double alpha = unit_draw(rng);
    if (arcs.in_major(alpha)) {
      ++rep.rejected;
      continue;
    }
    alphas.push_back(alpha);
  }
  for (const auto& v : sum.evaluate(alphas, threads)) {
    rep.max_abs_over_N = std::max(rep.max_abs_over_N, std::abs(v) / static_cast<double>(N));
  }
  const double logN = std::log(static_cast<double>(N));
  for (double A : A_grid) rep.scaled.push_back(rep.max_abs_over_N * std::pow(logN, A));
  return rep;
}

GammaSigma gamma_sigma(const WeaklyDigitalSeed& seed, std::size_t lambda) {
  if (lambda + 1 > seed.maps.size()) {
    throw DomainError("gamma_sigma with lambda=" + std::to_string(lambda) + " needs " + std::to_string(lambda + 1) +
                      " seed positions, the seed has " + std::to_string(seed.maps.size()));
  }
  const std::uint64_t b = seed.base;
  if (b < 2) throw DomainError("seed base must be >= 2");
  for (std::size_t i = 0; i <= lambda; ++i) {
    if (seed.maps[i].size() != b) throw DomainError("seed position " + std::to_string(i) + " does not have b entries");
  }
  const double lb = std::log(static_cast<double>(b));
  const double bd = static_cast<double>(b);
  const double c = 2.0 * std::numbers::ln2 / (2.0 * (bd - 1.0) * bd * bd * bd * bd * lb * lb);
  GammaSigma out;
  std::vector<double> u(b);
  for (std::size_t i = 0; i < lambda; ++i) {
    for (std::uint64_t d = 0; d < b; ++d) u[d] = bd * seed.maps[i][d] - seed.maps[i + 1][d];
    double s = 0.0;
    for (std::uint64_t m = 0; m < b; ++m) {
      for (std::uint64_t n = m + 1; n < b; ++n) {
        const double t = dist_to_int(u[m] - u[n]);
        s += t * t;
      }
    }
    out.gammas.push_back(c * s);
    out.sigma += c * s;
  }
  return out;
}

WeaklyDigitalSeed reversal_seed(const Base& base, std::uint64_t h, std::uint64_t q, std::uint64_t k,
                                std::uint64_t d, std::uint32_t L) {
  if (q == 0 || d == 0) throw DomainError("reversal_seed needs q, d >= 1");
  if (L == 0) throw DomainError("reversal_seed needs L >= 1");
  const std::uint64_t b = base.value();
  WeaklyDigitalSeed seed;
  seed.base = b;
  seed.maps.assign(L, std::vector<double>(b, 0.0));
  for (std::uint32_t i = 0; i < L; ++i) {
    const u128 left = pow_mod(b, L - i - 1, q) * (h % q) % q;
    const u128 right = pow_mod(b, i, d) * (k % d) % d;
    for (std::uint64_t n = 0; n < b; ++n) {
      const auto rq = static_cast<double>(static_cast<std::uint64_t>(left * n % q));
      const auto rd = static_cast<double>(static_cast<std::uint64_t>(right * n % d));
      double v = rq / static_cast<double>(q) + rd / static_cast<double>(d);
      if (v >= 1.0) v -= 1.0;
      seed.maps[i][n] = v;
    }
  }
  return seed;
}

std::uint64_t reverse_padded(std::uint64_t n, std::uint32_t L, const Base& base) {
  const std::uint64_t b = base.value();
  u128 out = 0;
  for (std::uint32_t i = 0; i < L; ++i) {
    out = out * b + n % b;
    n /= b;
    if (out > ~std::uint64_t{0}) throw ResourceError("padded reversal does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(out);
}

}  // namespace revprime
