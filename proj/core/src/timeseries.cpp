#include "garchx/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "garchx/error.hpp"

namespace garchx {

namespace {

void check_dates(std::span<const Date> dates, const std::string& what) {
  for (std::size_t i = 1; i < dates.size(); ++i) {
    if (dates[i] <= dates[i - 1]) {
      throw DataError(what + ": dates not strictly increasing at " + format_date(dates[i]));
    }
  }
}

void check_finite(std::span<const Date> dates, std::span<const double> values,
                  const std::string& what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw DataError(what + ": non-finite value on " + format_date(dates[i]));
    }
  }
}

std::string name_of(const std::string& label) { return label.empty() ? "series" : label; }

}  // namespace

DatedSeries::DatedSeries(std::vector<Date> dates, std::vector<double> values, std::string label)
    : dates_(std::move(dates)), values_(std::move(values)), label_(std::move(label)) {
  if (dates_.size() != values_.size()) {
    throw std::invalid_argument("DatedSeries: dates and values differ in length");
  }
  if (values_.empty()) throw DataError(name_of(label_) + ": empty series");
  check_dates(dates_, name_of(label_));
  check_finite(dates_, values_, name_of(label_));
}

DatedSeries DatedSeries::with_label(std::string label) const {
  DatedSeries copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

QuoteSeries::QuoteSeries(std::vector<Date> dates, std::vector<double> buy,
                         std::vector<double> sell, std::string label)
    : dates_(std::move(dates)), buy_(std::move(buy)), sell_(std::move(sell)),
      label_(std::move(label)) {
  if (dates_.size() != buy_.size() || dates_.size() != sell_.size()) {
    throw std::invalid_argument("QuoteSeries: column lengths differ");
  }
  if (dates_.empty()) throw DataError(name_of(label_) + ": empty quote series");
  check_dates(dates_, name_of(label_));
  check_finite(dates_, buy_, name_of(label_));
  check_finite(dates_, sell_, name_of(label_));
  for (std::size_t i = 0; i < dates_.size(); ++i) {
    if (sell_[i] < buy_[i]) {
      throw DataError(name_of(label_) + ": selling rate below buying rate on " +
                      format_date(dates_[i]));
    }
  }
}

AlignedDataset::AlignedDataset(std::vector<Date> dates, std::vector<double> returns,
                               std::vector<double> exog, std::string label)
    : dates_(std::move(dates)), returns_(std::move(returns)), exog_(std::move(exog)),
      label_(std::move(label)) {
  if (dates_.size() != returns_.size() || dates_.size() != exog_.size()) {
    throw std::invalid_argument("AlignedDataset: column lengths differ");
  }
  if (dates_.size() < kMinObservations) {
    throw DataError(name_of(label_) + ": " + std::to_string(dates_.size()) +
                    " aligned observations, at least " + std::to_string(kMinObservations) +
                    " required");
  }
  check_dates(dates_, name_of(label_));
  check_finite(dates_, returns_, name_of(label_));
  check_finite(dates_, exog_, name_of(label_));
}

DatedSeries AlignedDataset::returns_series() const { return {dates_, returns_, label_}; }

DatedSeries AlignedDataset::exog_series() const { return {dates_, exog_, label_ + " exog"}; }

AlignedDataset AlignedDataset::slice(DateRange range) const {
  std::vector<Date> d;
  std::vector<double> r, x;
  for (std::size_t i = 0; i < dates_.size(); ++i) {
    if (range.contains(dates_[i])) {
      d.push_back(dates_[i]);
      r.push_back(returns_[i]);
      x.push_back(exog_[i]);
    }
  }
  return {std::move(d), std::move(r), std::move(x), label_};
}

DatedSeries mid_rate(const QuoteSeries& quotes) {
  std::vector<double> mid(quotes.size());
  for (std::size_t i = 0; i < quotes.size(); ++i) {
    if (quotes.buy()[i] <= 0.0 || quotes.sell()[i] <= 0.0) {
      throw DataError(name_of(quotes.label()) + ": non-positive quote on " +
                      format_date(quotes.dates()[i]));
    }
    mid[i] = 0.5 * (quotes.buy()[i] + quotes.sell()[i]);
  }
  return {{quotes.dates().begin(), quotes.dates().end()}, std::move(mid), quotes.label()};
}

DatedSeries log_returns(const DatedSeries& series) {
  if (series.size() < 2) {
    throw DataError(name_of(series.label()) + ": log returns need at least 2 observations");
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.value(i) <= 0.0) {
      throw DataError(name_of(series.label()) + ": non-positive level on " +
                      format_date(series.date(i)));
    }
  }
  std::vector<Date> dates(series.dates().begin() + 1, series.dates().end());
  std::vector<double> out(series.size() - 1);
  for (std::size_t t = 1; t < series.size(); ++t) {
    const double prev = series.value(t - 1);
    out[t - 1] = std::log1p((series.value(t) - prev) / prev);
  }
  return {std::move(dates), std::move(out), series.label()};
}

DatedSeries first_difference(const DatedSeries& series) {
  if (series.size() < 2) {
    throw DataError(name_of(series.label()) + ": differencing needs at least 2 observations");
  }
  std::vector<Date> dates(series.dates().begin() + 1, series.dates().end());
  std::vector<double> out(series.size() - 1);
  for (std::size_t t = 1; t < series.size(); ++t) {
    out[t - 1] = series.value(t) - series.value(t - 1);
  }
  return {std::move(dates), std::move(out), series.label()};
}

DatedSeries log_transform(const DatedSeries& series, double shift) {
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double v = series.value(i) + shift;
    if (v <= 0.0) {
      throw DataError(name_of(series.label()) + ": cannot take log of non-positive value on " +
                      format_date(series.date(i)));
    }
    out[i] = std::log(v);
  }
  return {{series.dates().begin(), series.dates().end()}, std::move(out), series.label()};
}

AlignedDataset align(const DatedSeries& returns, const DatedSeries& exog, AlignPolicy policy) {
  std::vector<Date> dates;
  std::vector<double> r, x;
  const auto exog_dates = exog.dates();
  for (std::size_t i = 0; i < returns.size(); ++i) {
    const Date d = returns.date(i);
    // Last exogenous date not after d.
    const auto it = std::upper_bound(exog_dates.begin(), exog_dates.end(), d);
    if (it == exog_dates.begin()) continue;
    const auto j = static_cast<std::size_t>(std::prev(it) - exog_dates.begin());
    if (policy == AlignPolicy::intersect && exog_dates[j] != d) continue;
    dates.push_back(d);
    r.push_back(returns.value(i));
    x.push_back(exog.value(j));
  }
  if (dates.empty()) {
    throw DataError("no common dates between '" + name_of(returns.label()) + "' and '" +
                    name_of(exog.label()) + "'");
  }
  return {std::move(dates), std::move(r), std::move(x), returns.label()};
}

std::pair<AlignedDataset, AlignedDataset> split_period(const AlignedDataset& data, Date cutoff) {
  if (cutoff < data.first_date() || cutoff >= data.last_date()) {
    throw DataError("cutoff " + format_date(cutoff) + " outside the sample " +
                    format_date(data.first_date()) + " .. " + format_date(data.last_date()));
  }
  const Date after{cutoff + std::chrono::days{1}};
  return {data.slice({data.first_date(), cutoff}), data.slice({after, data.last_date()})};
}

AlignedDataset concatenate(const AlignedDataset& head, const AlignedDataset& tail) {
  if (tail.first_date() <= head.last_date()) {
    throw std::invalid_argument("concatenate: datasets overlap");
  }
  std::vector<Date> d(head.dates().begin(), head.dates().end());
  std::vector<double> r(head.returns().begin(), head.returns().end());
  std::vector<double> x(head.exog().begin(), head.exog().end());
  d.insert(d.end(), tail.dates().begin(), tail.dates().end());
  r.insert(r.end(), tail.returns().begin(), tail.returns().end());
  x.insert(x.end(), tail.exog().begin(), tail.exog().end());
  return {std::move(d), std::move(r), std::move(x), head.label()};
}

}  // namespace garchx
