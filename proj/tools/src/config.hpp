#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "output.hpp"

namespace revprime::cli {

struct RunConfig {
  std::uint64_t base = 10;
  std::filesystem::path cache_dir;  // empty: no disk cache
  unsigned threads = 0;             // 0: one per hardware thread
  Format format = Format::json;
  std::uint64_t seed = 20240601;
  std::filesystem::path fixtures_path;
  bool timing = false;
};

// Values given on the command line; unset members fall back to the
// environment, then the config file, then the defaults.
struct FlagValues {
  std::optional<std::uint64_t> base;
  std::optional<std::string> cache_dir;
  std::optional<unsigned> threads;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> fixtures;
  std::optional<std::string> config;
  bool timing = false;
};

// key = value lines with '#' comments. Throws DomainError on malformed lines.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

// Reads REVPRIME_CACHE_DIR and REVPRIME_THREADS; DomainError on bad values.
RunConfig resolve_config(const FlagValues& flags, const std::filesystem::path& default_fixtures);

// Integers written plainly or as exact scientific notation ("1e6").
std::uint64_t parse_count(const std::string& text, const std::string& what);
std::int64_t parse_signed(const std::string& text, const std::string& what);
// "a..b" (inclusive) or "a,b,c", each item parsed by parse_count.
std::vector<std::uint64_t> parse_count_list(const std::string& text, const std::string& what);
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const std::string& what);
// Seconds, with an optional s, m or h suffix.
double parse_duration(const std::string& text);
Format parse_format(const std::string& text);

}  // namespace revprime::cli
