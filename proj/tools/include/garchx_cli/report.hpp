#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace garchx::cli {

/// Empty (null), numeric, or text.
using Cell = std::variant<std::monostate, double, std::string>;

struct Row {
  std::string label;
  std::vector<Cell> cells;
};

struct Table {
  std::string name;
  std::string title;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  /// Text output merges the first `paired_columns` columns pairwise,
  /// (2k, 2k+1) -> "a(b)" under column 2k's header.
  std::size_t paired_columns = 0;
};

struct Report {
  std::string command;
  std::vector<Table> tables;
  std::vector<std::string> notes;

  const Table* find(const std::string& name) const;
};

enum class Format { text, csv, json };

/// Six significant digits, trailing zeros trimmed. Magnitudes below 1e-4 or
/// at least 1e7 use an uppercase exponent ("7.43E-07"). NaN and infinities
/// print as "NaN", "Inf", "-Inf".
std::string format_number(double value);

void render(const Report& report, Format format, std::ostream& out);

/// Numeric value of a formatted cell exactly as the renderers emit it.
std::optional<double> rendered_value(const Cell& cell);

}  // namespace garchx::cli
