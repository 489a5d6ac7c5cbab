#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace revprime::verify {

// Oracle-derived reference values: "key = value" lines, '#' comments, and a
// mandatory "version = 1" entry.
class Fixtures {
 public:
  static constexpr int kVersion = 1;

  static Fixtures load(const std::filesystem::path& path);
  static Fixtures parse(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  // Throws revprime::Error when the key is missing or not a number.
  double get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const noexcept { return values_; }
  const std::string& origin() const noexcept { return origin_; }

 private:
  std::map<std::string, std::string> values_;
  std::string origin_;
};

}  // namespace revprime::verify
