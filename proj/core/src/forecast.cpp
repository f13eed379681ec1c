#include "garchx/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "garchx/error.hpp"

namespace garchx {

namespace {

ForecastResult run_forecast(const ForecastOrigin& origin, const AlignedDataset& data,
                            DateRange window, ForecastMode mode) {
  origin.params.validate();
  if (window.last < window.first) throw DataError("empty forecast window");
  if (window.first <= origin.date) {
    throw DataError("forecast window must start after the estimation sample ending " +
                    format_date(origin.date));
  }
  if (window.last > data.last_date()) {
    throw DataError("forecast window ends " + format_date(window.last) +
                    " but the data end " + format_date(data.last_date()));
  }

  const auto& p = origin.params;
  const auto dates = data.dates();
  const auto r = data.returns();
  const auto x = data.exog();

  ForecastResult out{{}, {}, {}, mode, origin.date};
  double h_prev = origin.variance;
  double e_prev = origin.residual;
  bool first_step = true;
  for (std::size_t t = 0; t < data.size() && dates[t] <= window.last; ++t) {
    if (dates[t] <= origin.date) continue;
    double h;
    if (mode == ForecastMode::one_step || first_step) {
      h = p.var_intercept + p.garch * h_prev + p.arch * e_prev * e_prev;
    } else {
      h = p.var_intercept + p.persistence() * h_prev;
    }
    first_step = false;
    const double mean = p.mean_intercept + p.exog_coef * x[t];
    if (window.contains(dates[t])) {
      out.dates.push_back(dates[t]);
      out.mean_forecast.push_back(mean);
      out.variance_forecast.push_back(h);
    }
    h_prev = h;
    e_prev = r[t] - mean;
  }
  if (out.dates.empty()) throw DataError("no observations inside the forecast window");
  return out;
}

void require_pair(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("metric inputs differ in length");
  if (a.empty()) throw std::invalid_argument("metric inputs are empty");
}

double root_mean_square(std::span<const double> v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

const char* to_string(ForecastMode mode) {
  return mode == ForecastMode::one_step ? "static" : "dynamic";
}

ForecastOrigin forecast_origin(const GarchFit& fit) {
  const std::size_t last = fit.nobs() - 1;
  return {fit.params, fit.residuals.last_date(), fit.cond_variance.value(last),
          fit.residuals.value(last)};
}

ForecastResult forecast_static(const ForecastOrigin& origin, const AlignedDataset& data,
                               DateRange window) {
  return run_forecast(origin, data, window, ForecastMode::one_step);
}

ForecastResult forecast_dynamic(const ForecastOrigin& origin, const AlignedDataset& data,
                                DateRange window) {
  return run_forecast(origin, data, window, ForecastMode::dynamic);
}

ForecastResult forecast_static(const GarchFit& fit, const AlignedDataset& data,
                               DateRange window) {
  return forecast_static(forecast_origin(fit), data, window);
}

ForecastResult forecast_dynamic(const GarchFit& fit, const AlignedDataset& data,
                                DateRange window) {
  return forecast_dynamic(forecast_origin(fit), data, window);
}

double rmse(std::span<const double> actual, std::span<const double> forecast) {
  require_pair(actual, forecast);
  double s = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double d = actual[i] - forecast[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(actual.size()));
}

double mae(std::span<const double> actual, std::span<const double> forecast) {
  require_pair(actual, forecast);
  double s = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) s += std::abs(actual[i] - forecast[i]);
  return s / static_cast<double>(actual.size());
}

double theil_u(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  const double denom = root_mean_square(x) + root_mean_square(y);
  if (denom == 0.0) throw std::invalid_argument("theil_u: both series are identically zero");
  // rmse <= rms(x) + rms(y) holds exactly; the clamp absorbs rounding.
  return std::min(1.0, rmse(x, y) / denom);
}

ForecastEvaluation evaluate(const ForecastResult& forecast, const AlignedDataset& data,
                            TheilTarget theil) {
  const auto dates = data.dates();
  std::vector<double> proxy, returns;
  proxy.reserve(forecast.dates.size());
  for (const Date d : forecast.dates) {
    const auto it = std::lower_bound(dates.begin(), dates.end(), d);
    if (it == dates.end() || *it != d) {
      throw DataError("forecast date " + format_date(d) + " not present in the data");
    }
    const double r = data.returns()[static_cast<std::size_t>(it - dates.begin())];
    proxy.push_back(r * r);
    returns.push_back(r);
  }
  ForecastEvaluation out{};
  out.n = proxy.size();
  out.rmse = rmse(proxy, forecast.variance_forecast);
  out.mae = mae(proxy, forecast.variance_forecast);
  out.theil_u = theil == TheilTarget::variance ? theil_u(proxy, forecast.variance_forecast)
                                               : theil_u(returns, forecast.mean_forecast);
  return out;
}

}  // namespace garchx
