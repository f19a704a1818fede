#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace gaussq::cli {

enum class Format { text, csv, json };

/// `value` rounded to `precision` significant digits, printed in the
/// shortest form that reads back to that rounded value. Infinities print as
/// "inf" / "-inf".
std::string format_number(double value, int precision);

/// A field value: absent, text, number, integer, flag or list of tags.
using Value = std::variant<std::monostate, std::string, double, long long, bool, std::vector<std::string>>;

struct Field {
  std::string key;
  Value value;
};

/// Ordered fields of one record; the keys form the CSV header.
using Record = std::vector<Field>;

/// Output document: one record (key/value text) or a table of records
/// sharing the same keys.
struct Document {
  std::string command;
  std::vector<Record> rows;
  bool table = false;
};

inline constexpr int kSchemaVersion = 1;

void render(std::ostream& out, const Document& doc, Format format, int precision);

}  // namespace gaussq::cli
