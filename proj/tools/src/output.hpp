#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace revprime::cli {

enum class Format { json, csv };

using Value = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string>;

struct Field {
  std::string key;
  Value value;
};

// One output line. params are nested under "params" in JSON and flattened
// into columns in CSV.
struct Record {
  std::string command;
  std::vector<Field> params;
  std::vector<Field> fields;
};

// Reals use 17 significant digits; NaN and infinities become null in JSON.
std::string render(const Value& v, Format format);

class Emitter {
 public:
  Emitter(std::ostream& out, Format format) : out_(out), format_(format) {}

  // Writes the CSV header right away, so an empty result still has one.
  void columns(const Record& shape);
  void emit(const Record& r);
  Format format() const noexcept { return format_; }

 private:
  std::ostream& out_;
  Format format_;
  bool header_done_ = false;
};

}  // namespace revprime::cli
