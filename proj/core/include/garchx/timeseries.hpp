#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "garchx/date.hpp"

namespace garchx {

/// Smallest dataset the estimator accepts.
inline constexpr std::size_t kMinObservations = 30;

/// Date-indexed sequence of finite real observations.
///
/// Dates are strictly increasing and the series is never empty. Instances are
/// immutable once constructed; every transform returns a new series.
class DatedSeries {
 public:
  DatedSeries(std::vector<Date> dates, std::vector<double> values, std::string label = {});

  std::span<const Date> dates() const { return dates_; }
  std::span<const double> values() const { return values_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return values_.size(); }

  Date date(std::size_t i) const { return dates_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  Date first_date() const { return dates_.front(); }
  Date last_date() const { return dates_.back(); }

  DatedSeries with_label(std::string label) const;

 private:
  std::vector<Date> dates_;
  std::vector<double> values_;
  std::string label_;
};

/// Daily buying and selling quotes for one currency.
class QuoteSeries {
 public:
  QuoteSeries(std::vector<Date> dates, std::vector<double> buy, std::vector<double> sell,
              std::string label = {});

  std::span<const Date> dates() const { return dates_; }
  std::span<const double> buy() const { return buy_; }
  std::span<const double> sell() const { return sell_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return dates_.size(); }

 private:
  std::vector<Date> dates_;
  std::vector<double> buy_;
  std::vector<double> sell_;
  std::string label_;
};

/// Returns paired with the exogenous mean regressor on a shared date index.
class AlignedDataset {
 public:
  AlignedDataset(std::vector<Date> dates, std::vector<double> returns, std::vector<double> exog,
                 std::string label = {});

  std::span<const Date> dates() const { return dates_; }
  std::span<const double> returns() const { return returns_; }
  std::span<const double> exog() const { return exog_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return dates_.size(); }
  Date first_date() const { return dates_.front(); }
  Date last_date() const { return dates_.back(); }

  DatedSeries returns_series() const;
  DatedSeries exog_series() const;

  /// Rows whose dates fall inside `range`. Throws DataError when fewer than
  /// kMinObservations rows remain.
  AlignedDataset slice(DateRange range) const;

 private:
  std::vector<Date> dates_;
  std::vector<double> returns_;
  std::vector<double> exog_;
  std::string label_;
};

enum class AlignPolicy {
  intersect,      ///< keep dates present in both series
  carry_forward,  ///< every return date takes the latest exogenous value at or before it
};

DatedSeries mid_rate(const QuoteSeries& quotes);
DatedSeries log_returns(const DatedSeries& series);
DatedSeries first_difference(const DatedSeries& series);
DatedSeries log_transform(const DatedSeries& series, double shift = 0.0);

AlignedDataset align(const DatedSeries& returns, const DatedSeries& exog,
                     AlignPolicy policy = AlignPolicy::intersect);

/// Rows dated on or before `cutoff` go to the first half, the rest to the second.
std::pair<AlignedDataset, AlignedDataset> split_period(const AlignedDataset& data, Date cutoff);

/// Appends `tail` to `head`; tail must start after head ends.
AlignedDataset concatenate(const AlignedDataset& head, const AlignedDataset& tail);

}  // namespace garchx
