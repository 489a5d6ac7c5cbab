#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "revprime/digits.hpp"

namespace revprime {

enum class SumKind { prime, reversed_prime_coprime, all, B_set };

// Distance from x to the nearest integer.
double dist_to_int(double x) noexcept;

// A fixed list of (n, weight) terms evaluated as sum w e(n alpha) with Kahan
// compensation on both components. alpha is reduced to [0, 1) first.
class ExponentialSum {
 public:
  ExponentialSum(std::uint64_t x, SumKind kind, const Base& base);

  std::complex<double> operator()(double alpha) const;
  std::vector<std::complex<double>> evaluate(const std::vector<double>& alphas, unsigned threads = 0) const;

  std::uint64_t x() const noexcept { return x_; }
  std::size_t terms() const noexcept { return n_.size(); }
  // sum of squared weights
  double square_sum() const noexcept;
  const std::vector<std::uint64_t>& indices() const noexcept { return n_; }
  const std::vector<double>& weights() const noexcept { return w_; }

 private:
  std::uint64_t x_;
  std::vector<std::uint64_t> n_;
  std::vector<double> w_;
};

// S(alpha), rev S_b(alpha), v(alpha) or rev v_b(alpha) up to x.
std::complex<double> exp_sum(double alpha, std::uint64_t x, SumKind kind, const Base& base);

struct Arc {
  std::uint64_t a = 0;
  std::uint64_t q = 1;
  double center = 0.0;
  double lo = 0.0;  // clipped to [0, 1]
  double hi = 0.0;
};

struct ArcPartition {
  std::uint64_t N = 0;
  double B = 0.0;
  double Q = 0.0;
  double halfwidth = 0.0;  // Q / N
  std::vector<Arc> arcs;   // ascending by center
  double measure = 0.0;    // total length of the major arcs

  // The arc containing alpha (closed intervals), if any.
  std::optional<Arc> locate(double alpha) const;
  bool in_major(double alpha) const { return locate(alpha).has_value(); }
};

// Arcs |alpha - a/q| <= Q/N for q <= Q = (log N)^B, 0 <= a <= q, (a, q) = 1.
// DomainError if N < 16, B < 1, or two arcs overlap.
ArcPartition build_arcs(std::uint64_t N, double B);

enum class ArcSum { S, revS };

// |LHS - predicted| / N on the arc around a/q, with predicted
// mu(q)/phi(q) v(beta) for S and mu(q)/phi(q) 1_{q | b^3-b} rev v_b(beta) for
// rev S_b. DomainError if alpha is off that arc.
double major_arc_residual(double alpha, std::uint64_t a, std::uint64_t q, std::uint64_t N, double B,
                          const Base& base, ArcSum which);

// |v(beta)| ||beta|| for kind all, |rev v_b(beta)| ||beta|| / log N for B_set.
double weyl_ratio(double beta, std::uint64_t N, const Base& base, SumKind kind);

// Largest weyl_ratio over `samples` draws beta = (mt19937_64() >> 11) 2^-53;
// a draw of exactly 0 is skipped but still counts as a sample.
double weyl_probe(std::uint64_t N, const Base& base, SumKind kind, unsigned samples, std::uint64_t seed,
                  unsigned threads = 0);

struct ParsevalResult {
  double lhs = 0.0;  // sum (log p)^2 over coprime reversed primes <= N
  double rhs = 0.0;  // (1/M) sum_j |rev S_b(j/M)|^2
  std::uint64_t M = 0;
  double normalized = 0.0;  // lhs / (N log N)
};

ParsevalResult parseval_check(std::uint64_t N, const Base& base);

struct MinorArcReport {
  std::uint64_t N = 0;
  double B = 0.0;
  unsigned samples = 0;
  std::uint64_t rejected = 0;     // draws that fell on a major arc
  double max_abs_over_N = 0.0;    // max |rev S_b(alpha)| / N
  std::vector<double> A;
  std::vector<double> scaled;     // max_abs_over_N * (log N)^A
};

// Rejection-samples alpha from the minor arcs, same draw rule as weyl_probe.
MinorArcReport minor_arc_probe(std::uint64_t N, double B, const Base& base, unsigned samples, std::uint64_t seed,
                               const std::vector<double>& A_grid = {0, 1, 2, 3}, unsigned threads = 0);

// maps[i][d] = alpha_i(d) for positions i and digits d < b.
struct WeaklyDigitalSeed {
  std::uint64_t base = 10;
  std::vector<std::vector<double>> maps;
};

struct GammaSigma {
  std::vector<double> gammas;
  double sigma = 0.0;
};

// gamma_i for 0 <= i < lambda (needs maps for positions 0..lambda) and their
// sum. DomainError if lambda + 1 exceeds the seed length.
GammaSigma gamma_sigma(const WeaklyDigitalSeed& seed, std::size_t lambda);

// alpha_{L,i}(n) = (h/q) n b^(L-i-1) + (k/d) n b^i for 0 <= i < L, stored
// reduced mod 1 (computed with exact residues).
WeaklyDigitalSeed reversal_seed(const Base& base, std::uint64_t h, std::uint64_t q, std::uint64_t k,
                                std::uint64_t d, std::uint32_t L);

// sum_{i<L} eps_i(n) b^(L-i-1): reversal inside a field of L digits.
std::uint64_t reverse_padded(std::uint64_t n, std::uint32_t L, const Base& base);

}  // namespace revprime
