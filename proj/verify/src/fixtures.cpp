#include "revprime/verify/fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "revprime/error.hpp"

namespace revprime::verify {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Fixtures Fixtures::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fixtures file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path.string());
}

Fixtures Fixtures::parse(const std::string& text, const std::string& origin) {
  Fixtures out;
  out.origin_ = origin;
  std::istringstream in(text);
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
      throw Error(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(origin + ":" + std::to_string(lineno) + ": empty key");
    out.values_[key] = value;
  }
  if (!out.has("version")) throw Error(origin + ": missing version entry");
  if (out.values_.at("version") != std::to_string(kVersion)) {
    throw Error(origin + ": unsupported fixtures version " + out.values_.at("version"));
  }
  return out;
}

double Fixtures::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(origin_ + ": missing fixture " + key);
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0') throw Error(origin_ + ": fixture " + key + " is not a number");
  return v;
}

}  // namespace revprime::verify
