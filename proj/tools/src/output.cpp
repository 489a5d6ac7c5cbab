#include "output.hpp"

#include <fmt/format.h>

#include <cmath>

namespace revprime::cli {
namespace {

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<unsigned>(ch));
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string header_of(const Record& r) {
  std::string line = "command";
  for (const auto& f : r.params) line += "," + f.key;
  for (const auto& f : r.fields) line += "," + f.key;
  return line;
}

}  // namespace

std::string render(const Value& v, Format format) {
  return std::visit(
      [format](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return format == Format::json ? "null" : "";
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(x)) {
            if (format == Format::json) return "null";
            return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
          }
          return fmt::format("{:.17g}", x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return format == Format::json ? json_escape(x) : csv_escape(x);
        } else {
          return std::to_string(x);
        }
      },
      v);
}

void Emitter::columns(const Record& shape) {
  if (format_ != Format::csv || header_done_) return;
  out_ << header_of(shape) << '\n';
  header_done_ = true;
}

void Emitter::emit(const Record& r) {
  if (format_ == Format::csv) {
    columns(r);
    std::string line = csv_escape(r.command);
    for (const auto& f : r.params) line += "," + render(f.value, format_);
    for (const auto& f : r.fields) line += "," + render(f.value, format_);
    out_ << line << '\n';
    return;
  }
  std::string line = "{\"command\":" + json_escape(r.command);
  if (!r.params.empty()) {
    line += ",\"params\":{";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
      if (i != 0) line += ',';
      line += json_escape(r.params[i].key) + ":" + render(r.params[i].value, format_);
    }
    line += '}';
  }
  for (const auto& f : r.fields) line += "," + json_escape(f.key) + ":" + render(f.value, format_);
  out_ << line << "}\n";
}

}  // namespace revprime::cli
