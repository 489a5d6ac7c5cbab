#include "config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>

#include "revprime/error.hpp"

namespace revprime::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

unsigned parse_threads(const std::string& text, const std::string& what) {
  const std::uint64_t v = parse_count(text, what);
  if (v > 4096) throw DomainError(what + " must be at most 4096");
  return static_cast<unsigned>(v);
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  static const char* const kKeys[] = {"base", "cache_dir", "threads", "format", "seed", "fixtures"};
  for (const auto& [key, value] : out) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw DomainError(path.string() + ": unknown config key '" + key + "'");
  }
  return out;
}

RunConfig resolve_config(const FlagValues& flags, const std::filesystem::path& default_fixtures) {
  RunConfig cfg;
  cfg.fixtures_path = default_fixtures;
  if (flags.config) {
    const auto file = read_config_file(*flags.config);
    if (auto it = file.find("base"); it != file.end()) cfg.base = parse_count(it->second, "config base");
    if (auto it = file.find("cache_dir"); it != file.end()) cfg.cache_dir = it->second;
    if (auto it = file.find("threads"); it != file.end()) cfg.threads = parse_threads(it->second, "config threads");
    if (auto it = file.find("format"); it != file.end()) cfg.format = parse_format(it->second);
    if (auto it = file.find("seed"); it != file.end()) cfg.seed = parse_count(it->second, "config seed");
    if (auto it = file.find("fixtures"); it != file.end()) cfg.fixtures_path = it->second;
  }
  if (const char* env = std::getenv("REVPRIME_CACHE_DIR"); env != nullptr && *env != '\0') cfg.cache_dir = env;
  if (const char* env = std::getenv("REVPRIME_THREADS"); env != nullptr && *env != '\0') {
    cfg.threads = parse_threads(env, "REVPRIME_THREADS");
  }
  if (flags.base) cfg.base = *flags.base;
  if (flags.cache_dir) cfg.cache_dir = *flags.cache_dir;
  if (flags.threads) cfg.threads = *flags.threads;
  if (flags.format) cfg.format = parse_format(*flags.format);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.fixtures) cfg.fixtures_path = *flags.fixtures;
  cfg.timing = flags.timing;
  if (cfg.base < 2) throw DomainError("base must be at least 2, got " + std::to_string(cfg.base));
  return cfg;
}

std::uint64_t parse_count(const std::string& raw, const std::string& what) {
  const std::string text = trim(raw);
  if (text.empty()) throw DomainError(what + ": empty value");
  if (text.find_first_not_of("0123456789") == std::string::npos) {
    if (text.size() > 20) throw DomainError(what + ": " + text + " is too large");
    errno = 0;
    const unsigned long long v = std::strtoull(text.c_str(), nullptr, 10);
    if (errno == ERANGE) throw DomainError(what + ": " + text + " is too large");
    return v;
  }
  char* end = nullptr;
  const long double v = std::strtold(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(v >= 0) || v >= 18446744073709551616.0L || floorl(v) != v) {
    throw DomainError(what + ": expected a nonnegative integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::int64_t parse_signed(const std::string& raw, const std::string& what) {
  const std::string text = trim(raw);
  if (!text.empty() && text[0] == '-') {
    const std::uint64_t mag = parse_count(text.substr(1), what);
    if (mag > static_cast<std::uint64_t>(INT64_MAX)) throw DomainError(what + " is out of range");
    return -static_cast<std::int64_t>(mag);
  }
  const std::uint64_t v = parse_count(text, what);
  if (v > static_cast<std::uint64_t>(INT64_MAX)) throw DomainError(what + " is out of range");
  return static_cast<std::int64_t>(v);
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const std::string& what) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw DomainError(what + ": expected lo..hi, got '" + text + "'");
  const std::uint64_t lo = parse_count(text.substr(0, dots), what);
  const std::uint64_t hi = parse_count(text.substr(dots + 2), what);
  if (hi < lo) throw DomainError(what + ": empty range " + text);
  return {lo, hi};
}

std::vector<std::uint64_t> parse_count_list(const std::string& text, const std::string& what) {
  std::vector<std::uint64_t> out;
  if (text.find("..") != std::string::npos) {
    const auto [lo, hi] = parse_range(text, what);
    if (hi - lo >= (1u << 20)) throw DomainError(what + ": range " + text + " is too long");
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_count(text.substr(start, comma - start), what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_duration(const std::string& raw) {
  std::string text = trim(raw);
  double scale = 1.0;
  if (!text.empty()) {
    switch (text.back()) {
      case 's':
        text.pop_back();
        break;
      case 'm':
        scale = 60.0;
        text.pop_back();
        break;
      case 'h':
        scale = 3600.0;
        text.pop_back();
        break;
      default:
        break;
    }
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !(v > 0) || !std::isfinite(v)) {
    throw DomainError("budget must be a positive duration such as 90s, 10m or 1h, got '" + raw + "'");
  }
  return v * scale;
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw DomainError("format must be json or csv, got '" + text + "'");
}

}  // namespace revprime::cli
