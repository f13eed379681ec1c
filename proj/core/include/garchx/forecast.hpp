#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "garchx/date.hpp"
#include "garchx/garch.hpp"
#include "garchx/timeseries.hpp"

namespace garchx {

enum class ForecastMode {
  one_step,  ///< "static": each step conditions on the realized previous shock
  dynamic,   ///< multi-step from the origin; future shocks replaced by h_t
};

const char* to_string(ForecastMode mode);

/// State at the last in-sample date from which forecasts are made.
struct ForecastOrigin {
  GarchParams params;
  Date date;
  double variance;  ///< h at the origin date
  double residual;  ///< mean-equation residual at the origin date
};

ForecastOrigin forecast_origin(const GarchFit& fit);

struct ForecastResult {
  std::vector<Date> dates;
  std::vector<double> mean_forecast;
  std::vector<double> variance_forecast;
  ForecastMode mode;
  Date origin;
};

/// Forecasts for the rows of `data` inside `window`. The window must start
/// after the origin and end within the data; exogenous values over the window
/// are taken from `data`.
ForecastResult forecast_static(const ForecastOrigin& origin, const AlignedDataset& data,
                               DateRange window);
ForecastResult forecast_dynamic(const ForecastOrigin& origin, const AlignedDataset& data,
                                DateRange window);
ForecastResult forecast_static(const GarchFit& fit, const AlignedDataset& data, DateRange window);
ForecastResult forecast_dynamic(const GarchFit& fit, const AlignedDataset& data,
                                DateRange window);

double rmse(std::span<const double> actual_proxy, std::span<const double> forecast);
double mae(std::span<const double> actual_proxy, std::span<const double> forecast);

/// Theil inequality coefficient, 0 (perfect) to 1.
double theil_u(std::span<const double> x, std::span<const double> y);

/// Which pair the Theil coefficient compares.
enum class TheilTarget {
  variance,  ///< squared returns against variance forecasts (same pair as RMSE/MAE)
  returns,   ///< returns against mean forecasts
};

struct ForecastEvaluation {
  double rmse;
  double mae;
  double theil_u;
  std::size_t n;
};

/// Scores variance forecasts against the squared-return proxy.
ForecastEvaluation evaluate(const ForecastResult& forecast, const AlignedDataset& data,
                            TheilTarget theil = TheilTarget::variance);

}  // namespace garchx
