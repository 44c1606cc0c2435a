#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <json.hpp>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace spacings::output {

enum class Format { kCsv, kJson };

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

// 17 significant digits: every double round-trips exactly.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Column-ordered records. CSV gets a header row and '\n' endings; JSON is
/// an array of objects keyed by column name in the same order.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void write(std::ostream& out, Format format) const {
    if (format == Format::kCsv) {
      write_csv(out);
    } else {
      write_json(out);
    }
  }

  void write_csv(std::ostream& out) const {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c) out << ',';
      out << csv_field(columns_[c]);
    }
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out << ',';
        out << csv_cell(row[c]);
      }
      out << '\n';
    }
  }

  void write_json(std::ostream& out) const {
    out << '[';
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      out << (r ? ",\n " : "\n ") << '{';
      for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (c) out << ", ";
        out << nlohmann::json(columns_[c]).dump() << ": " << json_cell(rows_[r][c]);
      }
      out << '}';
    }
    out << (rows_.empty() ? "]\n" : "\n]\n");
  }

 private:
  static std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }

  static std::string csv_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::string>) {
            return csv_field(v);
          } else if constexpr (std::is_same_v<T, double>) {
            return format_double(v);
          } else {
            return std::to_string(v);
          }
        },
        cell);
  }

  static std::string json_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::string>) {
            return nlohmann::json(v).dump();
          } else if constexpr (std::is_same_v<T, double>) {
            return std::isfinite(v) ? format_double(v) : "null";
          } else {
            return std::to_string(v);
          }
        },
        cell);
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace spacings::output
