#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "garchx/timeseries.hpp"

namespace garchx {

/// Raw comma-separated table with a mandatory header row.
struct CsvTable {
  std::string source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  ///< 1-based file line of each row

  bool has_column(std::string_view name) const;
  /// Index of `name`; throws DataError listing the available columns.
  std::size_t column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in, std::string source = "<stream>");
CsvTable read_csv_file(const std::filesystem::path& path);

enum class MissingPolicy {
  reject,  ///< any empty/NA cell is an error
  drop,    ///< rows with an empty/NA cell in a used column are skipped
};

DatedSeries load_series(const CsvTable& table, std::string_view value_column,
                        MissingPolicy missing = MissingPolicy::reject,
                        std::string_view date_column = "date");

QuoteSeries load_quotes(const CsvTable& table, std::string_view buy_column = "buy",
                        std::string_view sell_column = "sell",
                        MissingPolicy missing = MissingPolicy::reject,
                        std::string_view date_column = "date");

}  // namespace garchx
