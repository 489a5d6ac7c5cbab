#include "revprime/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <string>

#include "revprime/digits.hpp"
#include "revprime/error.hpp"
#include "revprime/parallel.hpp"

namespace revprime {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double norm2(std::span<const double> x) {
  long double s = 0;
  for (double v : x) s += static_cast<long double>(v) * v;
  return static_cast<double>(std::sqrt(s));
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// The FFTW planner is not re-entrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
struct FftwFree {
  void operator()(T* p) const noexcept { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T, FftwFree<T>>;

template <class T>
FftwBuffer<T> fftw_alloc(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw ResourceError("FFT buffer allocation failed", sizeof(T) * n);
  return FftwBuffer<T>(p);
}

std::vector<double> fft_convolve(std::span<const double> u, std::span<const double> v, std::size_t out_len) {
  const std::size_t m = next_pow2(u.size() + v.size() - 1);
  const std::size_t half = m / 2 + 1;
  auto a = fftw_alloc<double>(m);
  auto b = fftw_alloc<double>(m);
  auto fa = fftw_alloc<fftw_complex>(half);
  auto fb = fftw_alloc<fftw_complex>(half);

  fftw_plan pa, pb, pinv;
  {
    std::lock_guard lock(planner_mutex());
    pa = fftw_plan_dft_r2c_1d(static_cast<int>(m), a.get(), fa.get(), FFTW_ESTIMATE);
    pb = fftw_plan_dft_r2c_1d(static_cast<int>(m), b.get(), fb.get(), FFTW_ESTIMATE);
    pinv = fftw_plan_dft_c2r_1d(static_cast<int>(m), fa.get(), a.get(), FFTW_ESTIMATE);
  }
  std::fill(a.get(), a.get() + m, 0.0);
  std::fill(b.get(), b.get() + m, 0.0);
  std::copy(u.begin(), u.end(), a.get());
  std::copy(v.begin(), v.end(), b.get());
  fftw_execute(pa);
  fftw_execute(pb);
  for (std::size_t i = 0; i < half; ++i) {
    const double re = fa.get()[i][0] * fb.get()[i][0] - fa.get()[i][1] * fb.get()[i][1];
    const double im = fa.get()[i][0] * fb.get()[i][1] + fa.get()[i][1] * fb.get()[i][0];
    fa.get()[i][0] = re;
    fa.get()[i][1] = im;
  }
  fftw_execute(pinv);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(pinv);
  }
  std::vector<double> out(out_len);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = a.get()[i] * scale;
  return out;
}

// ---- NTT ----

constexpr std::array<std::uint64_t, 3> kNttPrimes = {998244353, 167772161, 469762049};
constexpr std::uint64_t kNttRoot = 3;  // primitive root of all three

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e != 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

void ntt(std::vector<std::uint64_t>& a, std::uint64_t p, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = pow_mod(kNttRoot, (p - 1) / len, p);
    if (inverse) w = pow_mod(w, p - 2, p);
    const std::size_t h = len / 2;
    std::vector<std::uint64_t> tw(h);
    tw[0] = 1;
    for (std::size_t k = 1; k < h; ++k) tw[k] = tw[k - 1] * w % p;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < h; ++k) {
        const std::uint64_t x = a[i + k];
        const std::uint64_t y = a[i + k + h] * tw[k] % p;
        a[i + k] = x + y >= p ? x + y - p : x + y;
        a[i + k + h] = x >= y ? x - y : x + p - y;
      }
    }
  }
  if (inverse) {
    const std::uint64_t inv_n = pow_mod(n, p - 2, p);
    for (auto& x : a) x = x * inv_n % p;
  }
}

std::vector<std::uint64_t> ntt_convolve_mod(std::span<const std::uint64_t> u, std::span<const std::uint64_t> v,
                                            std::size_t m, std::uint64_t p) {
  std::vector<std::uint64_t> a(m, 0), b(m, 0);
  for (std::size_t i = 0; i < u.size(); ++i) a[i] = u[i] % p;
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = v[i] % p;
  ntt(a, p, false);
  ntt(b, p, false);
  for (std::size_t i = 0; i < m; ++i) a[i] = a[i] * b[i] % p;
  ntt(a, p, true);
  return a;
}

}  // namespace

Convolution convolve(std::span<const double> u, std::span<const double> v, const ConvolutionOptions& options) {
  Convolution out;
  if (u.empty() || v.empty()) return out;
  if (static_cast<std::uint64_t>(u.size()) + v.size() > kMaxConvolutionLength) {
    throw ResourceError("convolution operands of length " + std::to_string(u.size()) + " and " +
                            std::to_string(v.size()) + " exceed the 2^30 cap",
                        (u.size() + v.size()) * 32);
  }
  std::size_t len = u.size() + v.size() - 1;
  if (options.max_length != 0) len = std::min(len, options.max_length);
  const double scale = norm2(u) * norm2(v);

  if (!options.force_fft && len <= options.direct_crossover) {
    out.path = ConvolutionPath::direct;
    out.values.assign(len, 0.0);
    for (std::size_t i = 0; i < u.size() && i < len; ++i) {
      if (u[i] == 0.0) continue;
      const std::size_t jmax = std::min(v.size(), len - i);
      for (std::size_t j = 0; j < jmax; ++j) out.values[i + j] += u[i] * v[j];
    }
    out.error_bound = static_cast<double>(std::min(u.size(), v.size())) * kEps * scale;
    return out;
  }
  out.path = ConvolutionPath::fft;
  // Operands longer than the output cannot contribute beyond it.
  const auto ut = u.first(std::min(u.size(), len));
  const auto vt = v.first(std::min(v.size(), len));
  out.values = fft_convolve(ut, vt, len);
  const double m = static_cast<double>(next_pow2(ut.size() + vt.size() - 1));
  out.error_bound = 4.0 * std::log2(std::max(m, 2.0)) * kEps * norm2(ut) * norm2(vt);
  return out;
}

double propagated_bound(double operand_bound, std::span<const double> other) noexcept {
  long double l1 = 0;
  for (double x : other) l1 += std::fabs(x);
  return operand_bound * static_cast<double>(l1);
}

std::vector<std::uint64_t> convolve_exact(std::span<const std::uint64_t> u, std::span<const std::uint64_t> v,
                                          std::size_t max_length, unsigned threads) {
  if (u.empty() || v.empty()) return {};
  if (static_cast<std::uint64_t>(u.size()) + v.size() > kMaxConvolutionLength) {
    throw ResourceError("exact convolution operands exceed the 2^30 cap", (u.size() + v.size()) * 24);
  }
  std::size_t len = u.size() + v.size() - 1;
  if (max_length != 0) len = std::min(len, max_length);
  const auto ut = u.first(std::min(u.size(), len));
  const auto vt = v.first(std::min(v.size(), len));

  long double l1u = 0, l1v = 0;
  std::uint64_t maxu = 0, maxv = 0;
  for (auto x : ut) {
    l1u += x;
    maxu = std::max(maxu, x);
  }
  for (auto x : vt) {
    l1v += x;
    maxv = std::max(maxv, x);
  }
  const long double worst = std::min(l1u * maxv, l1v * maxu);
  if (worst >= 9.2e18L) {
    throw ResourceError("exact convolution coefficients could exceed 2^63");
  }

  std::vector<std::uint64_t> out(len, 0);
  if (static_cast<long double>(ut.size()) * vt.size() <= 1 << 16) {
    for (std::size_t i = 0; i < ut.size(); ++i) {
      if (ut[i] == 0) continue;
      for (std::size_t j = 0; j < vt.size() && i + j < len; ++j) out[i + j] += ut[i] * vt[j];
    }
    return out;
  }

  const std::size_t m = next_pow2(ut.size() + vt.size() - 1);
  if (m > (std::size_t{1} << 23)) {
    // 2^23 is the largest power of two dividing p - 1 for all three primes.
    throw ResourceError("exact convolution length " + std::to_string(m) + " exceeds the NTT limit 2^23",
                        m * 48);
  }
  std::array<std::vector<std::uint64_t>, 3> residues;
  parallel_for(3, threads, [&](std::size_t t) { residues[t] = ntt_convolve_mod(ut, vt, m, kNttPrimes[t]); });

  // Garner reconstruction; the true value is below 2^63 < p0 p1 p2.
  const std::uint64_t p0 = kNttPrimes[0], p1 = kNttPrimes[1], p2 = kNttPrimes[2];
  const std::uint64_t inv_p0_mod_p1 = pow_mod(p0, p1 - 2, p1);
  const std::uint64_t p0p1_mod_p2 = (p0 % p2) * (p1 % p2) % p2;
  const std::uint64_t inv_p0p1_mod_p2 = pow_mod(p0p1_mod_p2, p2 - 2, p2);
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint64_t r0 = residues[0][i], r1 = residues[1][i], r2 = residues[2][i];
    const std::uint64_t t1 = (r1 + p1 - r0 % p1) % p1 * inv_p0_mod_p1 % p1;
    const u128 x01 = u128{r0} + u128{t1} * p0;  // value mod p0 p1
    const std::uint64_t x01_mod_p2 = static_cast<std::uint64_t>(x01 % p2);
    const std::uint64_t t2 = (r2 + p2 - x01_mod_p2) % p2 * inv_p0p1_mod_p2 % p2;
    const u128 x = x01 + u128{t2} * p0 * p1;
    out[i] = static_cast<std::uint64_t>(x);
  }
  return out;
}

}  // namespace revprime
