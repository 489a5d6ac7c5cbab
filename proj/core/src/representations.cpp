#include "revprime/representations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "revprime/arithmetic.hpp"
#include "revprime/error.hpp"
#include "revprime/parallel.hpp"

namespace revprime {
namespace {

constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

unsigned summands(Family family, unsigned k) {
  switch (family) {
    case Family::R11:
    case Family::Rsquare:
      return 2;
    case Family::R12:
    case Family::R21:
      return 3;
    case Family::R0k:
      return k;
  }
  return 2;
}

void check_family(Family family, unsigned k) {
  if (family == Family::R0k && (k < 2 || k > kMaxPureSummands)) {
    throw DomainError("R0k needs 2 <= k <= " + std::to_string(kMaxPureSummands) + ", got " + std::to_string(k));
  }
}

void check_length(std::uint64_t n_max) {
  if (n_max > kMaxSequenceIndex) {
    throw ResourceError("representation range " + std::to_string(n_max) + " exceeds 2^31", (n_max + 1) * 8 * 4);
  }
}

// The two weighted operands and their 0/1 supports, indexed 0..n_max.
struct Operands {
  std::vector<double> prime;     // ln p at p
  std::vector<double> reversed;  // ln(rev n) at coprime reversed primes n
  std::vector<double> squarefree;

  static std::vector<std::uint64_t> support(const std::vector<double>& w) {
    std::vector<std::uint64_t> s(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) s[i] = w[i] > 0.0 ? 1 : 0;
    return s;
  }
};

Operands build_operands(std::uint64_t n_max, Family family, const Base& base) {
  Operands ops;
  const std::uint64_t x = std::max<std::uint64_t>(n_max, 1);
  ops.reversed = weighted_indicator(x, base, SequenceKind::reversed_prime_coprime).weights;
  if (family == Family::R11 || family == Family::R12 || family == Family::R21) {
    ops.prime = weighted_indicator(x, base, SequenceKind::prime).weights;
  }
  if (family == Family::Rsquare) {
    const auto sq = squarefree_table(x);
    ops.squarefree.assign(sq.begin(), sq.end());
  }
  return ops;
}

struct Chain {
  std::vector<double> values;
  double bound = 0.0;
  bool fft = false;
};

Chain step(const Chain& lhs, const std::vector<double>& rhs, std::size_t len) {
  ConvolutionOptions opts;
  opts.max_length = len;
  Convolution c = convolve(lhs.values, rhs, opts);
  Chain out;
  out.bound = c.error_bound + propagated_bound(lhs.bound, rhs);
  out.fft = lhs.fft || c.path == ConvolutionPath::fft;
  out.values = std::move(c.values);
  out.values.resize(len, 0.0);
  return out;
}

Chain float_chain(Family family, unsigned k, const Operands& ops, std::size_t len) {
  switch (family) {
    case Family::R11:
      return step(Chain{ops.prime, 0.0, false}, ops.reversed, len);
    case Family::R12:
      return step(step(Chain{ops.reversed, 0.0, false}, ops.reversed, len), ops.prime, len);
    case Family::R21:
      return step(step(Chain{ops.prime, 0.0, false}, ops.prime, len), ops.reversed, len);
    case Family::R0k: {
      Chain c{ops.reversed, 0.0, false};
      for (unsigned i = 1; i < k; ++i) c = step(c, ops.reversed, len);
      return c;
    }
    case Family::Rsquare:
      return step(Chain{ops.reversed, 0.0, false}, ops.squarefree, len);
  }
  return {};
}

// Number of admissible tuples at each index, exactly.
std::vector<std::uint64_t> support_chain(Family family, unsigned k, const Operands& ops, std::size_t len,
                                         unsigned threads) {
  const auto rv = Operands::support(ops.reversed);
  std::vector<std::uint64_t> out;
  switch (family) {
    case Family::R11:
      out = convolve_exact(Operands::support(ops.prime), rv, len, threads);
      break;
    case Family::R12:
      out = convolve_exact(convolve_exact(rv, rv, len, threads), Operands::support(ops.prime), len, threads);
      break;
    case Family::R21: {
      const auto pr = Operands::support(ops.prime);
      out = convolve_exact(convolve_exact(pr, pr, len, threads), rv, len, threads);
      break;
    }
    case Family::R0k:
      out = rv;
      for (unsigned i = 1; i < k; ++i) out = convolve_exact(out, rv, len, threads);
      break;
    case Family::Rsquare:
      out = convolve_exact(rv, Operands::support(ops.squarefree), len, threads);
      break;
  }
  out.resize(len, 0);
  return out;
}

// Whether some admissible pair sums to N; k = 2 families only.
bool pair_exists(std::uint64_t N, const std::vector<double>& first, const std::vector<double>& reversed) {
  for (std::uint64_t n = 1; n < N && n < reversed.size(); ++n) {
    if (reversed[n] > 0.0 && N - n < first.size() && first[N - n] > 0.0) return true;
  }
  return false;
}

// Singular series values keyed by which primes of b^3 - b divide N.
class SingularCache {
 public:
  SingularCache(Family family, unsigned k, const Base& base) : family_(family), k_(k), base_(base) {
    const auto& primes = base.modulus_primes();
    if (primes.size() <= 16) {
      table_.resize(std::size_t{1} << primes.size());
      for (std::size_t mask = 0; mask < table_.size(); ++mask) {
        // A representative N with exactly these primes dividing it, modulo
        // the product of the primes: CRT is unnecessary, the product of the
        // chosen primes works as long as the others do not divide it.
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < primes.size(); ++i) {
          if (mask & (std::size_t{1} << i)) n *= primes[i];
        }
        table_[mask] = compute(n);
      }
    }
  }

  Rational at(std::uint64_t N) const {
    if (table_.empty()) return compute(N);
    const auto& primes = base_.modulus_primes();
    std::size_t mask = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (N % primes[i] == 0) mask |= std::size_t{1} << i;
    }
    return table_[mask];
  }

 private:
  Rational compute(std::uint64_t N) const {
    switch (family_) {
      case Family::R11:
        return singular_S2(N, base_);
      case Family::R12:
      case Family::R21:
        return singular_S3(N, base_);
      case Family::R0k:
        return singular_Sk(N, k_, base_);
      case Family::Rsquare:
        return singular_Ssquare(N, base_);
    }
    return 0;
  }

  Family family_;
  unsigned k_;
  const Base& base_;
  std::vector<Rational> table_;
};

void finish(RepresentationProfile& r) { r.ratio = r.predicted == 0.0 ? kNaN : r.exact / r.predicted; }

// Same as convolve but insisting on integer results: the float path is kept
// when its bound proves rounding is exact, otherwise the NTT takes over.
std::vector<std::uint64_t> count_step(const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v,
                                      std::size_t len) {
  long double l1 = 0;
  std::uint64_t vmax = 0;
  for (auto x : u) l1 += x;
  for (auto x : v) vmax = std::max(vmax, x);
  if (l1 * vmax < 9.0e15L) {
    const std::vector<double> du(u.begin(), u.end()), dv(v.begin(), v.end());
    ConvolutionOptions opts;
    opts.max_length = len;
    const Convolution c = convolve(du, dv, opts);
    if (c.error_bound < 0.25) {
      std::vector<std::uint64_t> out(len, 0);
      for (std::size_t i = 0; i < c.values.size() && i < len; ++i) {
        out[i] = static_cast<std::uint64_t>(std::llround(std::max(0.0, c.values[i])));
      }
      return out;
    }
  }
  auto out = convolve_exact(u, v, len);
  out.resize(len, 0);
  return out;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::R11:
      return "r11";
    case Family::R12:
      return "r12";
    case Family::R21:
      return "r21";
    case Family::R0k:
      return "r0k";
    case Family::Rsquare:
      return "rsquare";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::exact:
      return "exact";
    case Provenance::fft:
      return "fft";
    case Provenance::sampled:
      return "sampled";
  }
  return "?";
}

std::vector<std::uint8_t> squarefree_table(std::uint64_t limit) {
  std::vector<std::uint8_t> sq(limit + 1, 1);
  sq[0] = 0;
  for (std::uint64_t d = 2; d * d <= limit; ++d) {
    for (std::uint64_t m = d * d; m <= limit; m += d * d) sq[m] = 0;
  }
  return sq;
}

std::vector<std::uint64_t> S_comb_profile(std::uint64_t n_max, Family family, unsigned k, const Base& base) {
  check_family(family, k);
  check_length(n_max);
  const std::size_t len = n_max + 1;
  std::vector<std::uint64_t> out(len, 0);
  if (family == Family::R11 || family == Family::Rsquare) {
    // #B(N) by running count.
    std::uint64_t run = 0;
    for (std::uint64_t n = 1; n < len; ++n) {
      if (base.coprime_to_base(leading_digit(n, base))) ++run;
      out[n] = run;
    }
    return out;
  }
  std::vector<std::uint64_t> one(len, 1), in_b(len, 0);
  one[0] = 0;
  for (std::uint64_t n = 1; n < len; ++n) in_b[n] = base.coprime_to_base(leading_digit(n, base)) ? 1 : 0;
  switch (family) {
    case Family::R12:
      return count_step(count_step(in_b, in_b, len), one, len);
    case Family::R21:
      return count_step(count_step(one, one, len), in_b, len);
    case Family::R0k: {
      auto acc = in_b;
      for (unsigned i = 1; i < k; ++i) acc = count_step(acc, in_b, len);
      return acc;
    }
    default:
      return out;
  }
}

std::uint64_t S_comb(std::uint64_t N, Family family, unsigned k, const Base& base) {
  if (family == Family::R11 || family == Family::Rsquare) return count_B(N, base);
  return S_comb_profile(N, family, k, base)[N];
}

std::vector<RepresentationProfile> R_profiles(std::uint64_t n_max, Family family, unsigned k, const Base& base,
                                              unsigned threads) {
  check_family(family, k);
  check_length(n_max);
  if (family != Family::R0k) k = summands(family, k);
  const std::size_t len = n_max + 1;
  const Operands ops = build_operands(n_max, family, base);
  const Chain chain = float_chain(family, k, ops, len);
  const std::vector<std::uint64_t> comb = S_comb_profile(n_max, family, k, base);

  std::vector<RepresentationProfile> out(len);
  std::vector<std::uint64_t> near_zero;
  for (std::uint64_t N = 0; N < len; ++N) {
    auto& r = out[N];
    r.N = N;
    r.family = family;
    r.k = k;
    r.error_bound = chain.bound;
    r.provenance = chain.fft ? Provenance::fft : Provenance::exact;
    r.exact = std::max(0.0, chain.values[N]);
    if (N < 2 || std::fabs(chain.values[N]) <= chain.bound) near_zero.push_back(N);
  }

  // Settle every entry that the float result cannot distinguish from zero.
  const std::size_t support_size =
      static_cast<std::size_t>(std::count_if(ops.reversed.begin(), ops.reversed.end(), [](double w) { return w > 0; }));
  const bool pairwise = k == 2 && static_cast<long double>(near_zero.size()) * support_size <= 5e7L;
  std::vector<std::uint64_t> support;
  if (!near_zero.empty() && !pairwise) support = support_chain(family, k, ops, len, threads);
  for (const std::uint64_t N : near_zero) {
    bool exists = false;
    if (N >= 2) {
      if (pairwise) {
        const auto& first = family == Family::R11       ? ops.prime
                            : family == Family::Rsquare ? ops.squarefree
                                                        : ops.reversed;
        exists = pair_exists(N, first, ops.reversed);
      } else {
        exists = support[N] != 0;
      }
    }
    auto& r = out[N];
    r.rechecked = true;
    if (!exists) {
      r.exact = 0.0;
      r.provenance = Provenance::exact;
    }
  }

  const SingularCache series(family, k, base);
  parallel_for((len + 4095) / 4096, threads, [&](std::size_t chunk) {
    const std::uint64_t lo = chunk * 4096;
    const std::uint64_t hi = std::min<std::uint64_t>(len, lo + 4096);
    for (std::uint64_t N = std::max<std::uint64_t>(lo, 1); N < hi; ++N) {
      auto& r = out[N];
      const Rational s = series.at(N);
      if (family == Family::Rsquare) {
        r.predicted = static_cast<double>(s * Rational(comb[N])) / kZeta2;
      } else {
        r.predicted = static_cast<double>(s * Rational(comb[N]));
      }
      finish(r);
    }
  });
  out[0].ratio = kNaN;
  return out;
}

RepresentationProfile R(std::uint64_t N, Family family, unsigned k, const Base& base) {
  if (N < 2) throw DomainError("representation counts need N >= 2");
  if (family == Family::Rsquare) return R_square(N, base);
  return R_profiles(N, family, k, base, 1)[N];
}

RepresentationProfile R_square(std::uint64_t N, const Base& base) {
  if (N < 2) throw DomainError("R_square needs N >= 2");
  check_length(N);
  const auto sq = squarefree_table(N);
  RepresentationProfile r;
  r.N = N;
  r.family = Family::Rsquare;
  r.k = 2;
  r.provenance = Provenance::exact;
  for (const auto& rec : enumerate_reversed_primes(N, base, true)) {
    if (rec.n >= N) break;
    if (sq[N - rec.n]) r.exact += rec.weight;
  }
  r.predicted = static_cast<double>(singular_Ssquare(N, base) * Rational(count_B(N, base))) / kZeta2;
  finish(r);
  return r;
}

ExceptionReport count_exceptions(std::uint64_t x, const Base& base, unsigned threads) {
  if (x < 4) throw DomainError("count_exceptions needs x >= 4");
  check_length(x);
  const std::size_t len = x + 1;
  const auto primes = Operands::support(weighted_indicator(x, base, SequenceKind::prime).weights);
  const auto reversed = Operands::support(weighted_indicator(x, base, SequenceKind::reversed_prime_coprime).weights);
  auto counts = convolve_exact(primes, reversed, len, threads);
  counts.resize(len, 0);
  ExceptionReport rep;
  rep.x = x;
  rep.evens = x / 2;
  for (std::uint64_t N = 2; N <= x; N += 2) {
    if (counts[N] == 0) rep.exceptions.push_back(N);
  }
  return rep;
}

}  // namespace revprime
