#include "garchx_cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include <json.hpp>

namespace garchx::cli {

namespace {

constexpr int kSignificant = 6;

void trim_fraction(std::string& digits) {
  if (digits.find('.') == std::string::npos) return;
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
}

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return "";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

void render_text(const Report& report, std::ostream& out) {
  for (const auto& table : report.tables) {
    auto step = [&](std::size_t c) { return c + 1 < table.paired_columns ? 2 : 1; };
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{""};
    for (std::size_t c = 0; c < table.columns.size(); c += step(c)) {
      header.push_back(table.columns[c]);
    }
    grid.push_back(header);
    for (const auto& row : table.rows) {
      std::vector<std::string> line{row.label};
      for (std::size_t c = 0; c < row.cells.size(); c += step(c)) {
        std::string text = cell_text(row.cells[c]);
        if (step(c) == 2 && !std::holds_alternative<std::monostate>(row.cells[c + 1])) {
          text += "(" + cell_text(row.cells[c + 1]) + ")";
        }
        line.push_back(text);
      }
      grid.push_back(line);
    }
    std::vector<std::size_t> width;
    for (const auto& line : grid) {
      width.resize(std::max(width.size(), line.size()), 0);
      for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    }
    out << table.title << '\n';
    for (const auto& line : grid) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        if (c == 0) {
          out << line[c] << std::string(width[c] - line[c].size(), ' ');
        } else {
          out << "  " << std::string(width[c] - line[c].size(), ' ') << line[c];
        }
      }
      out << '\n';
    }
    out << '\n';
  }
  for (const auto& note : report.notes) out << "note: " << note << '\n';
}

void render_csv(const Report& report, std::ostream& out) {
  out << "table,row,column,value\n";
  for (const auto& table : report.tables) {
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.cells.size(); ++c) {
        out << csv_field(table.name) << ',' << csv_field(row.label) << ','
            << csv_field(table.columns[c]) << ',' << csv_field(cell_text(row.cells[c])) << '\n';
      }
    }
  }
  for (const auto& note : report.notes) out << "note,,," << csv_field(note) << '\n';
}

void render_json(const Report& report, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["command"] = report.command;
  doc["tables"] = nlohmann::ordered_json::array();
  for (const auto& table : report.tables) {
    nlohmann::ordered_json t;
    t["name"] = table.name;
    t["title"] = table.title;
    t["columns"] = table.columns;
    t["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json values = nlohmann::ordered_json::array();
      for (const auto& cell : row.cells) {
        if (const auto v = rendered_value(cell)) {
          values.push_back(*v);
        } else if (const auto* s = std::get_if<std::string>(&cell)) {
          values.push_back(*s);
        } else {
          values.push_back(nullptr);
        }
      }
      t["rows"].push_back({{"label", row.label}, {"values", values}});
    }
    doc["tables"].push_back(t);
  }
  doc["notes"] = report.notes;
  out << doc.dump(2) << '\n';
}

}  // namespace

const Table* Report::find(const std::string& name) const {
  for (const auto& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
  if (value == 0.0) return "0";
  char buf[64];
  const double mag = std::fabs(value);
  if (mag < 1e-4 || mag >= 1e7) {
    std::snprintf(buf, sizeof buf, "%.*E", kSignificant - 1, value);
    std::string s(buf);
    const auto e = s.find('E');
    std::string mantissa = s.substr(0, e);
    trim_fraction(mantissa);
    return mantissa + s.substr(e);
  }
  const int exponent = static_cast<int>(std::floor(std::log10(mag)));
  const int decimals = std::max(0, kSignificant - 1 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  trim_fraction(s);
  return s == "-0" ? "0" : s;
}

std::optional<double> rendered_value(const Cell& cell) {
  const auto* d = std::get_if<double>(&cell);
  if (d == nullptr || !std::isfinite(*d)) return std::nullopt;
  return std::strtod(format_number(*d).c_str(), nullptr);
}

void render(const Report& report, Format format, std::ostream& out) {
  switch (format) {
    case Format::text: render_text(report, out); break;
    case Format::csv: render_csv(report, out); break;
    case Format::json: render_json(report, out); break;
  }
}

}  // namespace garchx::cli
