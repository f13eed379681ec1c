#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace garchx {

using Date = std::chrono::sys_days;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Throws DataError.
Date parse_date(std::string_view text);

std::string format_date(Date date);

/// Inclusive date interval.
struct DateRange {
  Date first;
  Date last;

  bool contains(Date d) const { return first <= d && d <= last; }
};

}  // namespace garchx
