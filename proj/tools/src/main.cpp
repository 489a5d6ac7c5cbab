#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <iostream>
#include <new>
#include <numeric>

#include "config.hpp"
#include "output.hpp"
#include "revprime/arithmetic.hpp"
#include "revprime/circle.hpp"
#include "revprime/digits.hpp"
#include "revprime/error.hpp"
#include "revprime/progressions.hpp"
#include "revprime/representations.hpp"
#include "revprime/schnirelmann.hpp"
#include "revprime/sieve.hpp"
#include "revprime/verify/suites.hpp"

#ifndef REVPRIME_DEFAULT_FIXTURES
#define REVPRIME_DEFAULT_FIXTURES "fixtures/tolerances.txt"
#endif

namespace revprime::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_ = Clock::now();
};

struct Context {
  RunConfig cfg;
  Emitter& out;

  Base base() const { return Base(cfg.base); }
  void finish(Record& r, const Stopwatch& sw) const {
    if (cfg.timing) r.fields.push_back({"runtime_ms", sw.ms()});
  }
};

Family parse_family(const std::string& s) {
  if (s == "r11") return Family::R11;
  if (s == "r12") return Family::R12;
  if (s == "r21") return Family::R21;
  if (s == "r0k") return Family::R0k;
  if (s == "rsquare") return Family::Rsquare;
  throw DomainError("family must be one of r11, r12, r21, r0k, rsquare; got '" + s + "'");
}

SumKind parse_kind(const std::string& s) {
  if (s == "prime") return SumKind::prime;
  if (s == "reversed") return SumKind::reversed_prime_coprime;
  if (s == "all") return SumKind::all;
  if (s == "bset") return SumKind::B_set;
  throw DomainError("kind must be one of prime, reversed, all, bset; got '" + s + "'");
}

double parse_real(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v)) throw DomainError(what + ": expected a real number, got '" + text + "'");
  return v;
}

// ---- enumerate

struct EnumerateArgs {
  std::string limit;
  bool coprime = false;
};

void cmd_enumerate(const Context& ctx, const EnumerateArgs& a) {
  const std::uint64_t x = parse_count(a.limit, "--limit");
  const Base base = ctx.base();
  Record shape{"enumerate", {}, {{"n", {}}, {"p", {}}, {"weight", {}}, {"coprime", {}}}};
  ctx.out.columns(shape);
  if (x == 0) return;
  for (const auto& rec : enumerate_reversed_primes(x, base, a.coprime)) {
    ctx.out.emit({"enumerate", {}, {{"n", rec.n}, {"p", rec.p}, {"weight", rec.weight}, {"coprime", rec.coprime}}});
  }
}

// ---- count-ap

struct CountApArgs {
  std::string x;
  std::string L;
  std::string a = "1";
  std::string q = "1";
};

std::vector<Field> ap_fields(const APResult& r) {
  return {{"observed", r.observed},
          {"predicted", r.main_term},
          {"ratio", r.ratio},
          {"raw_count", r.raw_count},
          {"within_q_range", r.within_q_range},
          {"provenance", std::string("exact")}};
}

void cmd_count_ap(const Context& ctx, const CountApArgs& args) {
  const Base base = ctx.base();
  if (args.x.empty() == args.L.empty()) throw DomainError("count-ap needs exactly one of --x or --L");
  const auto as = parse_count_list(args.a, "--a");
  const auto qs = parse_count_list(args.q, "--q");
  for (const auto q : qs) {
    if (q == 0) throw DomainError("--q values must be positive");
  }
  if (!args.L.empty()) {
    for (const auto L : parse_count_list(args.L, "--L")) {
      if (L == 0 || L > 64) throw DomainError("--L must lie in [1, 64]");
      for (const auto q : qs) {
        for (const auto a : as) {
          const Stopwatch sw;
          const APResult r = theta_star_L(static_cast<std::uint32_t>(L), static_cast<std::int64_t>(a), q, base);
          Record rec{"count-ap", {{"L", L}, {"a", a}, {"q", q}, {"base", ctx.cfg.base}}, ap_fields(r)};
          ctx.finish(rec, sw);
          ctx.out.emit(rec);
        }
      }
    }
    return;
  }
  const auto xs = parse_count_list(args.x, "--x");
  for (const auto x : xs) {
    if (x == 0) throw DomainError("--x values must be positive");
  }
  if (xs.size() == 1 && qs.size() == 1 && as.size() == 1) {
    const Stopwatch sw;
    const APResult r = theta_star_x(xs[0], static_cast<std::int64_t>(as[0]), qs[0], base);
    Record rec{"count-ap", {{"x", xs[0]}, {"a", as[0]}, {"q", qs[0]}, {"base", ctx.cfg.base}}, ap_fields(r)};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
    return;
  }
  // Grid: one enumeration at the largest x serves every cell, and sums in the
  // same order as the single query, so each row matches it bit for bit.
  const auto records = enumerate_reversed_primes(*std::max_element(xs.begin(), xs.end()), base, true);
  for (const auto x : xs) {
    for (const auto q : qs) {
      const Stopwatch sw;
      const auto cells = theta_star_x_residues(x, q, base, records);
      for (const auto a : as) {
        Record rec{"count-ap", {{"x", x}, {"a", a}, {"q", q}, {"base", ctx.cfg.base}}, ap_fields(cells[a % q])};
        ctx.finish(rec, sw);
        ctx.out.emit(rec);
      }
    }
  }
}

// ---- partition

struct PartitionArgs {
  std::uint32_t L = 0;
  std::uint32_t eta = 1;
  std::string r;
  std::int64_t a = 1;
  std::uint64_t q = 1;
  bool aggregate = false;
};

bool cmd_partition(const Context& ctx, const PartitionArgs& args) {
  const Base base = ctx.base();
  const Stopwatch sw;
  if (args.aggregate) {
    const bool ok = aggregate_check(args.L, args.a, args.q, base);
    Record rec{"partition",
               {{"L", std::uint64_t{args.L}}, {"a", args.a}, {"q", args.q}, {"base", ctx.cfg.base}},
               {{"aggregate_consistent", ok}}};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
    return ok;
  }
  if (args.r.empty()) throw DomainError("partition needs --r (or --aggregate)");
  const std::uint64_t r = parse_count(args.r, "--r");
  const APResult res = theta_star_partitioned(args.L, args.eta, r, args.a, args.q, base);
  Record rec{"partition",
             {{"L", std::uint64_t{args.L}},
              {"eta", std::uint64_t{args.eta}},
              {"r", r},
              {"a", args.a},
              {"q", args.q},
              {"base", ctx.cfg.base}},
             ap_fields(res)};
  ctx.finish(rec, sw);
  ctx.out.emit(rec);
  return true;
}

// ---- represent

struct RepresentArgs {
  std::string n;
  std::string range;
  std::string family = "r11";
  unsigned k = 2;
  std::string parity = "all";
  bool exceptions = false;
};

std::vector<Field> profile_fields(const RepresentationProfile& r) {
  return {{"observed", r.exact},        {"predicted", r.predicted}, {"ratio", r.ratio},
          {"error_bound", r.error_bound}, {"rechecked", r.rechecked}, {"provenance", to_string(r.provenance)}};
}

void cmd_represent(const Context& ctx, const RepresentArgs& args) {
  const Base base = ctx.base();
  const Family family = parse_family(args.family);
  if (args.n.empty() == args.range.empty()) throw DomainError("represent needs exactly one of --n or --range");
  if (args.parity != "all" && args.parity != "even" && args.parity != "odd") {
    throw DomainError("--parity must be all, even or odd");
  }
  const auto params = [&](std::vector<Field> head) {
    head.push_back({"family", args.family});
    head.push_back({"k", std::uint64_t{args.k}});
    head.push_back({"base", ctx.cfg.base});
    return head;
  };
  if (!args.n.empty()) {
    const Stopwatch sw;
    const std::uint64_t N = parse_count(args.n, "--n");
    Record rec{"represent", params({{"N", N}}), profile_fields(R(N, family, args.k, base))};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
    return;
  }
  const auto [lo, hi] = parse_range(args.range, "--range");
  if (args.exceptions) {
    if (family != Family::R11) throw DomainError("--exceptions counts N = p + rev p', so it needs --family r11");
    const Stopwatch sw;
    const ExceptionReport rep = count_exceptions(hi, base, ctx.cfg.threads);
    std::uint64_t evens = 0, count = 0;
    for (std::uint64_t N = std::max<std::uint64_t>(lo, 2); N <= hi; ++N) evens += N % 2 == 0;
    for (const auto N : rep.exceptions) count += N >= lo;
    Record rec{"represent",
               {{"N_lo", lo}, {"N_hi", hi}, {"family", args.family}, {"base", ctx.cfg.base}},
               {{"evens", evens},
                {"exceptions", count},
                {"density", evens == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(evens)},
                {"provenance", std::string("exact")}}};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
    return;
  }
  const Stopwatch sw;
  const auto profiles = family == Family::Rsquare && hi - lo < 64
                            ? std::vector<RepresentationProfile>{}
                            : R_profiles(hi, family, args.k, base, ctx.cfg.threads);
  for (std::uint64_t N = std::max<std::uint64_t>(lo, 2); N <= hi; ++N) {
    if (args.parity == "even" && N % 2 != 0) continue;
    if (args.parity == "odd" && N % 2 == 0) continue;
    const RepresentationProfile r = profiles.empty() ? R_square(N, base) : profiles[N];
    Record rec{"represent", params({{"N", N}}), profile_fields(r)};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
  }
}

// ---- circle

struct CircleArgs {
  std::string n = "100000";
  std::string alpha = "0";
  std::string kind = "reversed";
  double B = 1.0;
  unsigned samples = 100;
  std::uint64_t a = 0;
  std::uint64_t q = 1;
  std::string which = "revS";
  std::uint64_t h = 1, k = 1, d = 1;
  std::uint32_t L = 4;
  std::size_t lambda = 3;
  std::uint64_t points = 1024;
};

void cmd_circle(const Context& ctx, const std::string& mode, const CircleArgs& args) {
  const Base base = ctx.base();
  const Stopwatch sw;
  const std::uint64_t N = parse_count(args.n, "--n");
  if (mode == "sum") {
    const double alpha = parse_real(args.alpha, "--alpha");
    const auto s = exp_sum(alpha, N, parse_kind(args.kind), base);
    Record rec{"circle-sum",
               {{"N", N}, {"alpha", alpha}, {"kind", args.kind}, {"base", ctx.cfg.base}},
               {{"re", s.real()}, {"im", s.imag()}, {"abs", std::abs(s)}}};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
  } else if (mode == "arcs") {
    const ArcPartition arcs = build_arcs(N, args.B);
    Record rec{"circle-arcs",
               {{"N", N}, {"B", args.B}},
               {{"Q", arcs.Q}, {"halfwidth", arcs.halfwidth}, {"arcs", std::uint64_t{arcs.arcs.size()}},
                {"measure", arcs.measure}}};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
  } else if (mode == "residual") {
    const double alpha = parse_real(args.alpha, "--alpha");
    if (args.which != "S" && args.which != "revS") throw DomainError("--which must be S or revS");
    const double res =
        major_arc_residual(alpha, args.a, args.q, N, args.B, base, args.which == "S" ? ArcSum::S : ArcSum::revS);
    Record rec{"circle-residual",
               {{"N", N}, {"alpha", alpha}, {"a", args.a}, {"q", args.q}, {"B", args.B}, {"which", args.which},
                {"base", ctx.cfg.base}},
               {{"residual_over_N", res}}};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
  } else if (mode == "weyl") {
    const SumKind kind = parse_kind(args.kind);
    const double worst = weyl_probe(N, base, kind, args.samples, ctx.cfg.seed, ctx.cfg.threads);
    Record rec{"circle-weyl",
               {{"N", N}, {"kind", args.kind}, {"samples", std::uint64_t{args.samples}}, {"seed", ctx.cfg.seed},
                {"base", ctx.cfg.base}},
               {{"max_ratio", worst}, {"provenance", std::string("sampled")}}};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
  } else if (mode == "parseval") {
    const ParsevalResult p = parseval_check(N, base);
    Record rec{"circle-parseval",
               {{"N", N}, {"base", ctx.cfg.base}},
               {{"lhs", p.lhs}, {"rhs", p.rhs}, {"M", p.M}, {"normalized", p.normalized}}};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
  } else if (mode == "minor") {
    const MinorArcReport rep = minor_arc_probe(N, args.B, base, args.samples, ctx.cfg.seed, {0, 1, 2, 3}, ctx.cfg.threads);
    for (std::size_t i = 0; i < rep.A.size(); ++i) {
      Record rec{"circle-minor",
                 {{"N", N}, {"B", args.B}, {"samples", std::uint64_t{args.samples}}, {"seed", ctx.cfg.seed},
                  {"base", ctx.cfg.base}, {"A", rep.A[i]}},
                 {{"max_abs_over_N", rep.max_abs_over_N}, {"scaled", rep.scaled[i]}, {"rejected", rep.rejected},
                  {"provenance", std::string("sampled")}}};
      ctx.finish(rec, sw);
      ctx.out.emit(rec);
    }
  } else if (mode == "gamma") {
    const WeaklyDigitalSeed seed = reversal_seed(base, args.h, args.q, args.k, args.d, args.L);
    const GammaSigma gs = gamma_sigma(seed, args.lambda);
    for (std::size_t i = 0; i < gs.gammas.size(); ++i) {
      Record rec{"circle-gamma",
                 {{"h", args.h}, {"q", args.q}, {"k", args.k}, {"d", args.d}, {"L", std::uint64_t{args.L}},
                  {"lambda", std::uint64_t{args.lambda}}, {"base", ctx.cfg.base}, {"i", std::uint64_t{i}}},
                 {{"gamma", gs.gammas[i]}, {"sigma", gs.sigma}}};
      ctx.finish(rec, sw);
      ctx.out.emit(rec);
    }
  } else if (mode == "curve") {
    if (args.points == 0 || args.points > (1u << 20)) throw DomainError("--points must lie in [1, 2^20]");
    const ExponentialSum sum(N, parse_kind(args.kind), base);
    std::vector<double> alphas(args.points);
    for (std::uint64_t j = 0; j < args.points; ++j) alphas[j] = static_cast<double>(j) / static_cast<double>(args.points);
    const auto values = sum.evaluate(alphas, ctx.cfg.threads);
    for (std::uint64_t j = 0; j < args.points; ++j) {
      Record rec{"circle-curve",
                 {{"N", N}, {"kind", args.kind}, {"base", ctx.cfg.base}, {"j", j}},
                 {{"alpha", alphas[j]}, {"abs", std::abs(values[j])}, {"abs_over_N", std::abs(values[j]) / static_cast<double>(N)}}};
      ctx.finish(rec, sw);
      ctx.out.emit(rec);
    }
  }
}

// ---- schnirelmann

struct SchnirelmannArgs {
  unsigned i = 2;
  std::uint32_t L = 2;
  std::string n;
  std::string range;
  unsigned k_max = 4;
  bool per_n = false;
};

void cmd_schnirelmann(const Context& ctx, const std::string& mode, const SchnirelmannArgs& args) {
  const Stopwatch sw;
  if (mode == "gap") {
    const GapReport g = verify_gap(args.i, args.L);
    Record rec{"schnirelmann-gap",
               {{"i", std::uint64_t{args.i}}, {"L", std::uint64_t{args.L}}},
               {{"base", g.base}, {"lo", g.lo}, {"hi", g.hi}, {"reversed_prime_count", g.reversed_prime_count},
                {"forced_k", to_string(g.forced_k)}}};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
    return;
  }
  const Base base = ctx.base();
  if (mode == "min-k") {
    const std::uint64_t N = parse_count(args.n, "--n");
    const MinKResult r = min_k_representation(N, base, args.k_max);
    std::string witness;
    for (const auto w : r.witness) witness += (witness.empty() ? "" : "+") + std::to_string(w);
    Record rec{"schnirelmann-min-k",
               {{"N", N}, {"k_max", std::uint64_t{args.k_max}}, {"base", ctx.cfg.base}},
               {{"k", r.k ? Value{std::uint64_t{*r.k}} : Value{}}, {"witness", witness}, {"singleton", r.singleton}}};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
    return;
  }
  const auto [lo, hi] = parse_range(args.range, "--range");
  const ScanReport rep = scan_min_k(lo, hi, base, args.k_max, ctx.cfg.threads);
  const std::vector<Field> params = {{"N_lo", lo}, {"N_hi", hi}, {"k_max", std::uint64_t{args.k_max}}, {"base", ctx.cfg.base}};
  if (args.per_n) {
    for (std::uint64_t j = 0; j < rep.min_k.size(); ++j) {
      auto p = params;
      p.push_back({"N", lo + j});
      const std::uint8_t k = rep.min_k[j];
      Record rec{"schnirelmann-scan", p, {{"k", k == 0 ? Value{} : Value{std::uint64_t{k}}}}};
      ctx.finish(rec, sw);
      ctx.out.emit(rec);
    }
    return;
  }
  // Histogram rows; k = 0 collects the N with no representation within k_max.
  for (std::size_t k = 0; k < rep.histogram.size(); ++k) {
    auto p = params;
    p.push_back({"k", std::uint64_t{k}});
    Record rec{"schnirelmann-scan", p, {{"count", rep.histogram[k]}}};
    ctx.finish(rec, sw);
    ctx.out.emit(rec);
  }
}

// ---- verify

struct VerifyArgs {
  std::string suite = "all";
  std::string budget;
};

bool cmd_verify(const Context& ctx, const VerifyArgs& args) {
  using namespace revprime::verify;
  SuiteOptions opts;
  opts.threads = ctx.cfg.threads;
  if (!args.budget.empty()) opts.budget_seconds = parse_duration(args.budget);
  suite_criteria(args.suite);  // unknown suite: DomainError listing the suites
  if (suite_needs_fixtures(args.suite)) {
    if (!std::filesystem::exists(ctx.cfg.fixtures_path)) {
      throw DomainError("suite '" + args.suite + "' needs the oracle fixtures file; " + ctx.cfg.fixtures_path.string() +
                        " does not exist (pass --fixtures)");
    }
    opts.fixtures = Fixtures::load(ctx.cfg.fixtures_path);
  } else if (std::filesystem::exists(ctx.cfg.fixtures_path)) {
    opts.fixtures = Fixtures::load(ctx.cfg.fixtures_path);
  }
  opts.on_result = [&](const CriterionResult& r) {
    Record rec{"verify",
               {{"suite", args.suite}, {"criterion", std::int64_t{r.id}}},
               {{"title", r.title}, {"passed", r.passed}, {"detail", r.detail}}};
    if (ctx.cfg.timing) rec.fields.push_back({"runtime_ms", static_cast<std::int64_t>(std::llround(r.seconds * 1000))});
    ctx.out.emit(rec);
    std::cout.flush();
  };
  bool ok = true;
  for (const auto& r : run_suite(args.suite, opts)) ok = ok && r.passed;
  return ok;
}

int run(int argc, char** argv) {
  CLI::App app{"Reversed primes: enumeration, progressions, representation counts and circle-method diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();

  FlagValues flags;
  app.add_option("--base", flags.base, "Radix b >= 2 (default 10)");
  app.add_option("--format", flags.format, "json or csv (default json)");
  app.add_option("--cache-dir", flags.cache_dir, "Directory for sieve cache files");
  app.add_option("--threads", flags.threads, "Worker threads, 0 = auto");
  app.add_option("--seed", flags.seed, "Seed for sampled probes");
  app.add_option("--fixtures", flags.fixtures, "Oracle fixtures file for verify");
  app.add_option("--config", flags.config, "key = value config file");
  app.add_flag("--timing", flags.timing, "Add runtime_ms to every record");

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "List reversed primes rev p <= limit");
  enumerate->add_option("--limit,--x", en.limit, "Upper bound x")->required();
  enumerate->add_flag("--coprime", en.coprime, "Keep only rev p coprime to b^3 - b");

  CountApArgs ap;
  auto* count_ap = app.add_subcommand("count-ap", "Log-weighted reversed primes in a residue class");
  count_ap->add_option("--x", ap.x, "Bound x, or a list/range for grid mode");
  count_ap->add_option("--L", ap.L, "Digit length L instead of a bound x");
  count_ap->add_option("--a", ap.a, "Residue(s), default 1");
  count_ap->add_option("--q", ap.q, "Modulus or moduli (e.g. 1..30), default 1");

  PartitionArgs pa;
  auto* partition = app.add_subcommand("partition", "Reversed primes with a fixed leading block r");
  partition->add_option("--L", pa.L, "Digit length")->required();
  partition->add_option("--eta", pa.eta, "Leading block length");
  partition->add_option("--r", pa.r, "Leading block value, an eta-digit numeral");
  partition->add_option("--a", pa.a, "Residue");
  partition->add_option("--q", pa.q, "Modulus");
  partition->add_flag("--aggregate", pa.aggregate, "Check that the blocks add up to the full count");

  RepresentArgs re;
  auto* represent = app.add_subcommand("represent", "Weighted representation counts");
  represent->add_option("--n", re.n, "Single N");
  represent->add_option("--range", re.range, "lo..hi");
  represent->add_option("--family", re.family, "r11, r12, r21, r0k or rsquare");
  represent->add_option("--k", re.k, "Summands for r0k (2..6)");
  represent->add_option("--parity", re.parity, "all, even or odd (range mode)");
  represent->add_flag("--exceptions", re.exceptions, "Count even N with no representation (r11)");

  CircleArgs ci;
  auto* circle = app.add_subcommand("circle", "Exponential sums and arc diagnostics");
  circle->require_subcommand(1);
  const auto circle_mode = [&](const char* name, const char* help) {
    auto* s = circle->add_subcommand(name, help);
    s->add_option("--n,--x", ci.n, "Length N");
    return s;
  };
  auto* c_sum = circle_mode("sum", "Evaluate one exponential sum");
  c_sum->add_option("--alpha", ci.alpha, "Frequency");
  c_sum->add_option("--kind", ci.kind, "prime, reversed, all or bset");
  auto* c_arcs = circle_mode("arcs", "Major-arc partition summary");
  c_arcs->add_option("--B", ci.B, "Exponent in Q = (log N)^B");
  auto* c_res = circle_mode("residual", "Major-arc approximation error");
  c_res->add_option("--alpha", ci.alpha, "Frequency on the arc");
  c_res->add_option("--a", ci.a, "Arc numerator");
  c_res->add_option("--q", ci.q, "Arc denominator");
  c_res->add_option("--B", ci.B, "Exponent in Q = (log N)^B");
  c_res->add_option("--which", ci.which, "S or revS");
  auto* c_weyl = circle_mode("weyl", "Sampled Weyl-type bound probe");
  c_weyl->add_option("--kind", ci.kind, "all or bset");
  c_weyl->add_option("--samples", ci.samples, "Number of draws");
  circle_mode("parseval", "Coefficient squares against DFT quadrature");
  auto* c_minor = circle_mode("minor", "Sampled minor-arc maximum");
  c_minor->add_option("--B", ci.B, "Exponent in Q = (log N)^B");
  c_minor->add_option("--samples", ci.samples, "Number of accepted draws");
  auto* c_gamma = circle->add_subcommand("gamma", "Digit-function constants of the reversal seed");
  c_gamma->set_help_flag("--help", "Print this help message and exit");  // frees -h for the numerator
  c_gamma->add_option("--h", ci.h, "Numerator h");
  c_gamma->add_option("--q", ci.q, "Denominator q");
  c_gamma->add_option("--k", ci.k, "Numerator k");
  c_gamma->add_option("--d", ci.d, "Denominator d");
  c_gamma->add_option("--L", ci.L, "Digit length");
  c_gamma->add_option("--lambda", ci.lambda, "Number of positions");
  auto* c_curve = circle_mode("curve", "|sum| on an equally spaced grid of frequencies");
  c_curve->add_option("--points", ci.points, "Grid size M; alpha = j / M");
  c_curve->add_option("--kind", ci.kind, "prime, reversed, all or bset");

  SchnirelmannArgs sc;
  auto* schn = app.add_subcommand("schnirelmann", "Gaps and sums of few reversed primes");
  schn->require_subcommand(1);
  auto* s_gap = schn->add_subcommand("gap", "Count reversed primes in the primorial-base gap");
  s_gap->add_option("--i", sc.i, "Primorial index 1..9");
  s_gap->add_option("--L", sc.L, "Digit length >= 2");
  auto* s_min = schn->add_subcommand("min-k", "Fewest reversed primes summing to N");
  s_min->add_option("--n", sc.n, "Target N")->required();
  s_min->add_option("--k-max", sc.k_max, "Largest k to try (<= 8)");
  auto* s_scan = schn->add_subcommand("scan", "Minimal k over a range");
  s_scan->add_option("--range", sc.range, "lo..hi")->required();
  s_scan->add_option("--k-max", sc.k_max, "Largest k to try (<= 8)");
  s_scan->add_flag("--per-n", sc.per_n, "One row per N instead of a histogram");

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "Run acceptance suites");
  verify->add_option("--suite", ve.suite, "identities, representations, asymptotics or all");
  verify->add_option("--budget", ve.budget, "Wall-clock budget, e.g. 10m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const RunConfig cfg = resolve_config(flags, REVPRIME_DEFAULT_FIXTURES);
  if (!cfg.cache_dir.empty()) PrimeTableCache::global().set_directory(cfg.cache_dir);
  PrimeTableCache::global().set_threads(cfg.threads);
  Emitter out(std::cout, cfg.format);
  const Context ctx{cfg, out};

  bool ok = true;
  if (enumerate->parsed()) {
    cmd_enumerate(ctx, en);
  } else if (count_ap->parsed()) {
    cmd_count_ap(ctx, ap);
  } else if (partition->parsed()) {
    ok = cmd_partition(ctx, pa);
  } else if (represent->parsed()) {
    cmd_represent(ctx, re);
  } else if (circle->parsed()) {
    for (auto* sub : circle->get_subcommands()) {
      if (sub->parsed()) cmd_circle(ctx, sub->get_name(), ci);
    }
  } else if (schn->parsed()) {
    for (auto* sub : schn->get_subcommands()) {
      if (sub->parsed()) cmd_schnirelmann(ctx, sub->get_name(), sc);
    }
  } else if (verify->parsed()) {
    ok = cmd_verify(ctx, ve);
  }
  std::cout.flush();
  return ok ? kExitOk : kExitFailed;
}

}  // namespace
}  // namespace revprime::cli

int main(int argc, char** argv) {
  using namespace revprime;
  try {
    return cli::run(argc, argv);
  } catch (const DomainError& e) {
    std::cerr << "revprime: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "revprime: " << e.what();
    if (e.bytes_required() != 0) std::cerr << " (needs about " << e.bytes_required() << " bytes)";
    std::cerr << '\n';
    return cli::kExitResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "revprime: out of memory\n";
    return cli::kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "revprime: " << e.what() << '\n';
    return cli::kExitFailed;
  }
}
