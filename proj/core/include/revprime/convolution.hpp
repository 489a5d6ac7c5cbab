#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace revprime {

enum class ConvolutionPath { direct, fft };

struct Convolution {
  std::vector<double> values;
  // A-posteriori bound on max_n |values[n] - exact[n]|.
  double error_bound = 0.0;
  ConvolutionPath path = ConvolutionPath::direct;
};

struct ConvolutionOptions {
  // Output lengths at or below this use the O(n^2) direct sum.
  std::size_t direct_crossover = 512;
  // Truncate the output to this many entries (0 keeps all nu + nv - 1).
  std::size_t max_length = 0;
  bool force_fft = false;
};

inline constexpr std::uint64_t kMaxConvolutionLength = std::uint64_t{1} << 30;

// (u * v)[n] = sum_{i+j=n} u[i] v[j]. The FFT path reports
// 4 log2(M) eps |u|_2 |v|_2 for transform length M; the direct path reports
// len eps |u|_2 |v|_2. Throws ResourceError when nu + nv exceeds 2^30.
Convolution convolve(std::span<const double> u, std::span<const double> v,
                     const ConvolutionOptions& options = {});

// Error contributed when an operand that was itself computed with error
// bound e is convolved with x: e * |x|_1.
double propagated_bound(double operand_bound, std::span<const double> other) noexcept;

// Exact convolution of non-negative integer sequences by a three-prime NTT.
// Throws ResourceError if a coefficient could reach 2^64 (checked from
// |u|_1 max v before transforming). Transforms of the three residues run on
// separate threads.
std::vector<std::uint64_t> convolve_exact(std::span<const std::uint64_t> u,
                                          std::span<const std::uint64_t> v, std::size_t max_length = 0,
                                          unsigned threads = 0);

}  // namespace revprime
