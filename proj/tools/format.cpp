#include "format.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace gaussq::cli {

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string as_text(const Value& v, int precision) {
  struct Visitor {
    int precision;
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double x) const { return format_number(x, precision); }
    std::string operator()(long long n) const { return std::to_string(n); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::vector<std::string>& tags) const { return join(tags, ';'); }
  };
  return std::visit(Visitor{precision}, v);
}

nlohmann::ordered_json as_json(const Value& v, int precision) {
  struct Visitor {
    int precision;
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(double x) const {
      if (!std::isfinite(x)) return format_number(x, precision);
      // Round through the decimal text so JSON and CSV carry the same value.
      const std::string text = format_number(x, precision);
      double rounded = 0.0;
      std::from_chars(text.data(), text.data() + text.size(), rounded);
      return rounded;
    }
    nlohmann::ordered_json operator()(long long n) const { return n; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(const std::vector<std::string>& tags) const { return tags; }
  };
  return std::visit(Visitor{precision}, v);
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string format_number(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, precision);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  double rounded = 0.0;
  std::from_chars(buf, res.ptr, rounded);
  const auto shortest = std::to_chars(buf, buf + sizeof buf, rounded);
  return std::string(buf, shortest.ptr);
}

void render(std::ostream& out, const Document& doc, Format format, int precision) {
  switch (format) {
    case Format::text:
      for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        if (r) out << '\n';
        for (const auto& f : doc.rows[r]) {
          if (std::holds_alternative<std::monostate>(f.value)) continue;
          out << f.key << ": " << as_text(f.value, precision) << '\n';
        }
      }
      break;
    case Format::csv: {
      if (doc.rows.empty()) break;
      std::vector<std::string> header;
      for (const auto& f : doc.rows.front()) header.push_back(f.key);
      out << join(header, ',') << '\n';
      for (const auto& row : doc.rows) {
        std::vector<std::string> cells;
        for (const auto& f : row) cells.push_back(csv_cell(as_text(f.value, precision)));
        out << join(cells, ',') << '\n';
      }
      break;
    }
    case Format::json: {
      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = doc.command;
      const auto object = [&](const Record& row) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (const auto& f : row) o[f.key] = as_json(f.value, precision);
        return o;
      };
      if (doc.table) {
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : doc.rows) j["rows"].push_back(object(row));
      } else if (!doc.rows.empty()) {
        j["result"] = object(doc.rows.front());
      }
      out << j.dump(2) << '\n';
      break;
    }
  }
}

}  // namespace gaussq::cli
