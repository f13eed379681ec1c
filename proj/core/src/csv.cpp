#include "garchx/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>

#include "garchx/error.hpp"

namespace garchx {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool is_missing(std::string_view cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "null" ||
         cell == ".";
}

std::string where(const CsvTable& table, std::size_t row) {
  return table.source + ":" + std::to_string(table.line_numbers[row]);
}

std::optional<double> parse_number(const CsvTable& table, std::size_t row, std::size_t col,
                                   MissingPolicy missing) {
  const std::string& cell = table.rows[row][col];
  if (is_missing(cell)) {
    if (missing == MissingPolicy::drop) return std::nullopt;
    throw DataError(where(table, row) + ": missing value in column '" + table.header[col] + "'");
  }
  double value = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DataError(where(table, row) + ": cannot parse '" + cell + "' in column '" +
                    table.header[col] + "' as a number");
  }
  return value;
}

Date parse_row_date(const CsvTable& table, std::size_t row, std::size_t col) {
  try {
    return parse_date(table.rows[row][col]);
  } catch (const DataError& e) {
    throw DataError(where(table, row) + ": " + e.what());
  }
}

}  // namespace

bool CsvTable::has_column(std::string_view name) const {
  for (const auto& h : header) {
    if (h == name) return true;
  }
  return false;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  std::string available;
  for (const auto& h : header) available += (available.empty() ? "" : ", ") + h;
  throw DataError(source + ": no column '" + std::string(name) + "' (available: " + available +
                  ")");
}

CsvTable read_csv(std::istream& in, std::string source) {
  CsvTable table;
  table.source = std::move(source);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw DataError(table.source + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(table.header.size()) + " fields, found " +
                      std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(line_no);
  }
  if (table.header.empty()) throw DataError(table.source + ": missing header row");
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_csv(in, path.string());
}

DatedSeries load_series(const CsvTable& table, std::string_view value_column,
                        MissingPolicy missing, std::string_view date_column) {
  const auto dc = table.column(date_column);
  const auto vc = table.column(value_column);
  std::vector<Date> dates;
  std::vector<double> values;
  for (std::size_t row = 0; row < table.rows.size(); ++row) {
    const auto v = parse_number(table, row, vc, missing);
    if (!v) continue;
    const Date d = parse_row_date(table, row, dc);
    if (!dates.empty() && d <= dates.back()) {
      throw DataError(where(table, row) + ": date " + format_date(d) +
                      " is not after the previous row");
    }
    dates.push_back(d);
    values.push_back(*v);
  }
  if (dates.empty()) throw DataError(table.source + ": no usable rows");
  return {std::move(dates), std::move(values), std::string(value_column)};
}

QuoteSeries load_quotes(const CsvTable& table, std::string_view buy_column,
                        std::string_view sell_column, MissingPolicy missing,
                        std::string_view date_column) {
  const auto dc = table.column(date_column);
  const auto bc = table.column(buy_column);
  const auto sc = table.column(sell_column);
  std::vector<Date> dates;
  std::vector<double> buy, sell;
  for (std::size_t row = 0; row < table.rows.size(); ++row) {
    const auto b = parse_number(table, row, bc, missing);
    const auto s = parse_number(table, row, sc, missing);
    if (!b || !s) continue;
    const Date d = parse_row_date(table, row, dc);
    if (!dates.empty() && d <= dates.back()) {
      throw DataError(where(table, row) + ": date " + format_date(d) +
                      " is not after the previous row");
    }
    if (*s < *b) {
      throw DataError(where(table, row) + ": selling rate below buying rate");
    }
    dates.push_back(d);
    buy.push_back(*b);
    sell.push_back(*s);
  }
  if (dates.empty()) throw DataError(table.source + ": no usable rows");
  return {std::move(dates), std::move(buy), std::move(sell), std::filesystem::path(table.source).stem().string()};
}

}  // namespace garchx
