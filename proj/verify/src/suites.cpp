#include "revprime/verify/suites.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>

#include "revprime/arithmetic.hpp"
#include "revprime/circle.hpp"
#include "revprime/digits.hpp"
#include "revprime/error.hpp"
#include "revprime/progressions.hpp"
#include "revprime/representations.hpp"
#include "revprime/schnirelmann.hpp"
#include "revprime/sieve.hpp"
#include "revprime/verify/oracles.hpp"

namespace revprime::verify {
namespace {

using Clock = std::chrono::steady_clock;

// Outcome of a check body before timing is applied.
struct Check {
  bool passed = true;
  std::string detail;
  std::uint64_t failures = 0;
  std::string first_failure;

  void fail(std::string what) {
    if (failures++ == 0) first_failure = std::move(what);
    passed = false;
  }
  void finish(const std::string& summary) {
    detail = summary;
    if (failures != 0) detail += fmt::format("; {} failures, first: {}", failures, first_failure);
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  bool needs_fixtures;
  Check (*body)(const SuiteOptions&);
};

int mobius_td(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

Check reversal_suite(const SuiteOptions&) {
  Check c;
  constexpr std::uint64_t kLimit = 100000;
  std::uint64_t checked = 0;
  for (const std::uint64_t b : {2, 3, 6, 10}) {
    const Base base(b);
    const std::uint64_t w = b * b - 1;
    for (std::uint64_t n = 1; n <= kLimit; ++n) {
      const std::uint64_t r = reverse(n, base);
      if (r != reverse_oracle(n, b)) c.fail(fmt::format("rev {} in base {} differs from the digit-string reversal", n, b));
      if (n % b != 0 && reverse(r, base) != n) c.fail(fmt::format("rev rev {} != {} in base {}", n, n, b));
      const std::uint32_t L = digit_length(n, base);
      std::uint64_t scaled = n % w;
      for (std::uint32_t i = 1; i < L; ++i) scaled = scaled * b % w;
      if (r % w != scaled) c.fail(fmt::format("rev {} != b^(L-1) n mod {} in base {}", n, w, b));
      if ((std::gcd(n, w) > 1) != (std::gcd(r, w) > 1)) {
        c.fail(fmt::format("gcd with {} not preserved by reversal at n={} base {}", w, n, b));
      }
      ++checked;
    }
  }
  c.finish(fmt::format("{} (n, b) pairs", checked));
  return c;
}

Check f_b_identity(const SuiteOptions&) {
  Check c;
  std::uint64_t checked = 0;
  for (std::uint64_t b = 2; b <= 12; ++b) {
    const Base base(b);
    const std::uint64_t m = b * b * b - b;
    for (std::uint64_t q = 1; q <= 500; ++q) {
      std::vector<std::complex<double>> roots(q);
      for (std::uint64_t j = 0; j < q; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(q);
        roots[j] = {std::cos(theta), std::sin(theta)};
      }
      std::vector<std::uint64_t> admissible;
      for (std::uint64_t r = 0; r < q; ++r) {
        if (std::gcd(std::gcd(r, q), m) == 1) admissible.push_back(r);
      }
      const int expected = m % q == 0 ? mobius_td(q) : 0;
      for (std::uint64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        std::complex<double> sum = 0.0;
        for (const auto r : admissible) sum += roots[r * a % q];
        const double err = std::abs(sum - std::complex<double>(expected, 0.0));
        if (err > 1e-9 * static_cast<double>(q)) {
          c.fail(fmt::format("b={} q={} a={}: |sum - {}| = {:.3g}", b, q, a, expected, err));
        }
        if (f_b(q, static_cast<std::int64_t>(a), base) != expected) {
          c.fail(fmt::format("f_b(b={}, q={}, a={}) = {}, expected {}", b, q, a,
                             f_b(q, static_cast<std::int64_t>(a), base), expected));
        }
        ++checked;
      }
    }
  }
  c.finish(fmt::format("{} (b, q, a) triples", checked));
  return c;
}

Check singular_series(const SuiteOptions&) {
  Check c;
  std::uint64_t checked = 0;
  for (std::uint64_t b = 2; b <= 12; ++b) {
    const Base base(b);
    for (std::uint64_t N = 1; N <= 2000; ++N) {
      const Rational product = singular_S3(N, base);
      if (singular_S3_sum_form(N, base) != product) c.fail(fmt::format("b={} N={}: sum form != product form", b, N));
      if (N % 2 == 0 && product != 0) c.fail(fmt::format("b={} N={}: S3 of an even N is nonzero", b, N));
      if (N % 2 == 1 && singular_S2(N, base) != 0) c.fail(fmt::format("b={} N={}: S2 of an odd N is nonzero", b, N));
      ++checked;
    }
  }
  const Base ten(10);
  Rational smallest = 1000;
  for (std::uint64_t N = 1; N <= 2000; N += 2) {
    const Rational s = singular_S3(N, ten);
    if (s < smallest) smallest = s;
    if (!(s > Rational(66016, 100000))) c.fail(fmt::format("b=10 N={}: S3 = {} is not above 0.66016", N, to_string(s)));
  }
  c.finish(fmt::format("{} (b, N) pairs, min S3(odd N, b=10) = {:.17g}", checked, static_cast<double>(smallest)));
  return c;
}

Check representation_oracles(const SuiteOptions& opts) {
  Check c;
  constexpr std::uint64_t kMax = 2000;
  struct Case {
    Family family;
    const char* name;
    unsigned k;
  };
  const Case cases[] = {{Family::R11, "r11", 2}, {Family::R12, "r12", 3}, {Family::R21, "r21", 3},
                        {Family::R0k, "r0k", 2}, {Family::R0k, "r0k", 3}, {Family::Rsquare, "rsquare", 2}};
  double worst = 0.0;
  std::uint64_t checked = 0;
  for (const std::uint64_t b : {2, 3, 6, 10}) {
    const Base base(b);
    for (const auto& cs : cases) {
      const auto brute = brute_representations(cs.name, cs.k, kMax, b);
      const auto profiles = R_profiles(kMax, cs.family, cs.k, base, opts.threads);
      for (std::uint64_t N = 2; N <= kMax; ++N) {
        const double got = profiles[N].exact;
        const double want = brute[N];
        ++checked;
        if (want == 0.0) {
          if (got != 0.0) c.fail(fmt::format("{} k={} b={} N={}: {} where brute force finds none", cs.name, cs.k, b, N, got));
          continue;
        }
        const double rel = std::fabs(got - want) / want;
        worst = std::max(worst, rel);
        if (!(rel <= 1e-6)) {
          c.fail(fmt::format("{} k={} b={} N={}: {:.17g} vs {:.17g}", cs.name, cs.k, b, N, got, want));
        }
      }
      if (cs.family == Family::Rsquare) {
        for (const std::uint64_t N : {999ull, 1000ull, 2000ull}) {
          const double single = R_square(N, base).exact;
          const double rel = std::fabs(single - brute_R_square(N, b)) / std::max(1.0, brute_R_square(N, b));
          if (!(rel <= 1e-6)) c.fail(fmt::format("R_square b={} N={} disagrees with brute force", b, N));
        }
      }
    }
  }
  c.finish(fmt::format("{} values, worst relative error {:.3g}", checked, worst));
  return c;
}

Check obstructions(const SuiteOptions& opts) {
  Check c;
  const Base ten(10);
  std::string summary;
  for (const std::uint64_t N : {600ull, 6000ull, 60000ull}) {
    const auto profiles = R_profiles(N, Family::R0k, 2, ten, opts.threads);
    const auto& r = profiles[N];
    if (r.exact != 0.0 || r.provenance != Provenance::exact) {
      c.fail(fmt::format("R0k(N={}, k=2) = {} ({})", N, r.exact, to_string(r.provenance)));
    }
    summary += fmt::format("R0k({})={} ", N, r.exact);
  }
  for (const auto& [i, L] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 2u}}) {
    const GapReport g = verify_gap(i, L);
    if (g.reversed_prime_count != 0) {
      c.fail(fmt::format("gap (i={}, L={}) in [{}, {}] holds {} reversed primes", i, L, g.lo, g.hi, g.reversed_prime_count));
    }
    summary += fmt::format("gap({},{})={} ", i, L, g.reversed_prime_count);
  }
  summary.pop_back();
  c.finish(summary);
  return c;
}

Check comb_bounds(const SuiteOptions&) {
  Check c;
  std::uint64_t checked = 0;
  for (const std::uint64_t b : {2, 3, 6, 10}) {
    const Base base(b);
    const double bd = static_cast<double>(b);
    for (const std::uint64_t N : {1000ull, 10000ull, 100000ull}) {
      const double n2 = static_cast<double>(N) * static_cast<double>(N);
      const std::uint64_t s12 = S_comb(N, Family::R12, 3, base);
      const std::uint64_t s21 = S_comb(N, Family::R21, 3, base);
      if (!(n2 / (16 * bd * bd) <= s12 && s12 <= n2 / 2)) c.fail(fmt::format("S12(N={}, b={}) = {}", N, b, s12));
      if (!(n2 / (8 * bd) <= s21 && s21 <= n2 / 2)) c.fail(fmt::format("S21(N={}, b={}) = {}", N, b, s21));
      if (N == 1000) {
        if (s12 != brute_S12(N, b)) c.fail(fmt::format("S12(N={}, b={}) differs from enumeration", N, b));
        if (s21 != brute_S21(N, b)) c.fail(fmt::format("S21(N={}, b={}) differs from enumeration", N, b));
      }
      checked += 2;
    }
  }
  c.finish(fmt::format("{} bounds", checked));
  return c;
}

Check progression_convergence(const SuiteOptions& opts) {
  Check c;
  const Fixtures& fx = *opts.fixtures;
  const Base ten(10);
  const std::uint64_t xs[] = {10000, 100000, 1000000, 10000000};
  const std::uint64_t moduli[] = {1, 3, 7, 9, 11};
  const auto records = enumerate_reversed_primes(xs[3], ten, true);
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> worst;  // (q, x) -> max_a |ratio - 1|
  std::string summary;
  for (const auto x : xs) {
    const double tol = fx.get(fmt::format("progression.tolerance.{}", x));
    double worst_x = 0.0;
    for (const auto q : moduli) {
      const auto cells = theta_star_x_residues(x, q, ten, records);
      double& w = worst[{q, x}];
      for (std::uint64_t a = 0; a < q; ++a) {
        if (rho(static_cast<std::int64_t>(a), q, ten) != 1) continue;
        const double dev = std::fabs(cells[a].ratio - 1.0);
        if (!(dev <= tol)) c.fail(fmt::format("x={} q={} a={}: ratio {:.17g} outside tolerance {:.6g}", x, q, a, cells[a].ratio, tol));
        w = std::max(w, dev);
      }
      worst_x = std::max(worst_x, w);
    }
    summary += fmt::format("x={} max|ratio-1|={:.4g} (tol {:.4g}); ", x, worst_x, tol);
  }
  for (const auto q : moduli) {
    if (!(worst[{q, xs[3]}] < worst[{q, xs[0]}])) {
      c.fail(fmt::format("q={}: deviation {:.6g} at 1e7 not below {:.6g} at 1e4", q, worst[{q, xs[3]}], worst[{q, xs[0]}]));
    }
  }
  summary.resize(summary.size() - 2);
  c.finish(summary);
  return c;
}

Check parseval(const SuiteOptions& opts) {
  Check c;
  std::string summary;
  for (const std::uint64_t N : {1000ull, 10000ull}) {
    const ParsevalResult p = parseval_check(N, Base(10));
    const double rel = std::fabs(p.lhs - p.rhs) / p.lhs;
    if (!(rel <= 1e-6)) c.fail(fmt::format("N={}: lhs {:.17g} rhs {:.17g}", N, p.lhs, p.rhs));
    if (!std::isfinite(p.normalized)) c.fail(fmt::format("N={}: lhs/(N ln N) is not finite", N));
    const std::string key = fmt::format("parseval.ratio.{}", N);
    if (opts.fixtures && opts.fixtures->has(key)) {
      const double want = opts.fixtures->get(key);
      if (!(std::fabs(p.normalized - want) <= 1e-9 * want)) {
        c.fail(fmt::format("N={}: lhs/(N ln N) = {:.17g}, oracle {:.17g}", N, p.normalized, want));
      }
    }
    summary += fmt::format("N={} rel {:.3g} lhs/(N ln N)={:.6g}; ", N, rel, p.normalized);
  }
  summary.resize(summary.size() - 2);
  c.finish(summary);
  return c;
}

Check exceptional_set(const SuiteOptions& opts) {
  Check c;
  const Fixtures& fx = *opts.fixtures;
  const Base ten(10);
  const std::uint64_t xs[] = {1000, 10000, 100000, 1000000};
  const ExceptionReport full = count_exceptions(xs[3], ten, opts.threads);
  const auto small = brute_exceptions(xs[0], 10);
  std::vector<std::uint64_t> head;
  for (const auto N : full.exceptions) {
    if (N <= xs[0]) head.push_back(N);
  }
  if (head != small) c.fail("exceptions up to 1000 differ from the pairwise search");
  double previous = std::numeric_limits<double>::infinity();
  double density = 0.0;
  std::string summary;
  for (const auto x : xs) {
    std::uint64_t count = 0;
    for (const auto N : full.exceptions) count += N <= x ? 1 : 0;
    density = static_cast<double>(count) / static_cast<double>(x / 2);
    if (!(density < previous)) c.fail(fmt::format("density {:.6g} at x={} does not decrease", density, x));
    const std::string key = fmt::format("exceptions.count.{}", x);
    if (fx.has(key) && static_cast<double>(count) != fx.get(key)) {
      c.fail(fmt::format("{} exceptions up to {}, oracle found {}", count, x, fx.get(key)));
    }
    previous = density;
    summary += fmt::format("x={}: {} ({:.3g}); ", x, count, density);
  }
  const double threshold = fx.get("exceptions.density_threshold");
  if (!(density < threshold)) c.fail(fmt::format("final density {:.6g} not below {:.6g}", density, threshold));
  summary += fmt::format("threshold {:.3g}", threshold);
  c.finish(summary);
  return c;
}

Check ternary_positivity(const SuiteOptions& opts) {
  Check c;
  constexpr std::uint64_t kLo = 10000, kHi = 11000;
  const Base ten(10);
  double min_margin = std::numeric_limits<double>::infinity();
  std::uint64_t checked = 0;
  for (const Family f : {Family::R12, Family::R21}) {
    const auto profiles = R_profiles(kHi, f, 3, ten, opts.threads);
    for (std::uint64_t N = kLo + 1; N <= kHi; N += 2) {
      const auto& r = profiles[N];
      if (!(r.exact > 0.0 && r.exact > r.error_bound)) {
        c.fail(fmt::format("{}({}) = {:.17g} with error bound {:.3g}", to_string(f), N, r.exact, r.error_bound));
      }
      min_margin = std::min(min_margin, r.exact / std::max(r.error_bound, 1e-300));
      ++checked;
    }
  }
  c.finish(fmt::format("{} odd N, smallest value/bound {:.3g}", checked, min_margin));
  return c;
}

const Criterion kCriteria[kCriterionCount] = {
    {1, "reversal involution, congruence and gcd equivalence", 30, false, reversal_suite},
    {2, "f_b equals mu(q) on divisors of b^3-b", 60, false, f_b_identity},
    {3, "singular series sum and product forms", 60, false, singular_series},
    {4, "representation counts match brute force", 600, false, representation_oracles},
    {5, "exact obstructions", 300, false, obstructions},
    {6, "combinatorial factor bounds", 0, false, comb_bounds},
    {7, "reversed primes in progressions converge", 900, true, progression_convergence},
    {8, "Parseval on the reversed-prime sum", 0, false, parseval},
    {9, "exceptional set density decreases", 0, true, exceptional_set},
    {10, "ternary representation counts are positive", 0, false, ternary_positivity},
};

const std::map<std::string, std::vector<int>>& registry() {
  static const std::map<std::string, std::vector<int>> suites = {
      {"identities", {1, 2, 3, 5, 6, 8}},
      {"representations", {4, 10}},
      {"asymptotics", {7, 9}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
  };
  return suites;
}

const Criterion& criterion(int id) {
  if (id < 1 || id > kCriterionCount) throw DomainError("criterion ids run from 1 to 10, got " + std::to_string(id));
  return kCriteria[id - 1];
}

}  // namespace

std::vector<std::string> suite_names() { return {"identities", "representations", "asymptotics", "all"}; }

std::vector<int> suite_criteria(const std::string& suite) {
  const auto it = registry().find(suite);
  if (it == registry().end()) {
    std::string names;
    for (const auto& n : suite_names()) names += (names.empty() ? "" : ", ") + n;
    throw DomainError("unknown suite '" + suite + "'; available: " + names);
  }
  return it->second;
}

bool suite_needs_fixtures(const std::string& suite) {
  for (const int id : suite_criteria(suite)) {
    if (criterion(id).needs_fixtures) return true;
  }
  return false;
}

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  const Criterion& cr = criterion(id);
  if (cr.needs_fixtures && !options.fixtures) {
    throw Error("criterion " + std::to_string(id) + " compares against oracle fixtures; pass a fixtures file");
  }
  CriterionResult out;
  out.id = id;
  out.title = cr.title;
  out.limit_seconds = cr.limit_seconds;
  const auto start = Clock::now();
  Check c = cr.body(options);
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  out.passed = c.passed;
  out.detail = c.detail;
  if (cr.limit_seconds > 0 && out.seconds > cr.limit_seconds) {
    out.passed = false;
    out.detail += fmt::format("; took {:.1f} s, limit {:.0f} s", out.seconds, cr.limit_seconds);
  }
  return out;
}

std::vector<CriterionResult> run_suite(const std::string& suite, const SuiteOptions& options) {
  const auto ids = suite_criteria(suite);
  if (suite_needs_fixtures(suite) && !options.fixtures) {
    throw Error("suite '" + suite + "' checks oracle trends and needs a fixtures file");
  }
  std::vector<CriterionResult> out;
  const auto start = Clock::now();
  for (const int id : ids) {
    const double spent = std::chrono::duration<double>(Clock::now() - start).count();
    CriterionResult r;
    if (spent >= options.budget_seconds) {
      r.id = id;
      r.title = criterion(id).title;
      r.limit_seconds = criterion(id).limit_seconds;
      r.detail = fmt::format("not run: budget of {:.0f} s spent", options.budget_seconds);
    } else {
      r = run_criterion(id, options);
    }
    if (options.on_result) options.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return fmt::format("{} {} {} ({}, {:.2f} s)", r.passed ? "PASS" : "FAIL", r.id, r.title, r.detail, r.seconds);
}

}  // namespace revprime::verify
