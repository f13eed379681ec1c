#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "garchx/timeseries.hpp"

namespace garchx {

enum class Deterministic { none, constant, constant_trend };
enum class LagSelection { fixed, aic, bic };

/// Left-tail critical values; always crit_1pct < crit_5pct < crit_10pct.
struct CriticalValues {
  double pct1;
  double pct5;
  double pct10;
};

/// Outcome of a Dickey-Fuller type test. The null hypothesis is a unit root;
/// small p-values favour stationarity.
struct UnitRootResult {
  double statistic;
  double p_value;
  std::size_t lags_used;  ///< augmentation lags (ADF) or Bartlett bandwidth (PP)
  Deterministic deterministic;
  CriticalValues critical_values;
  double regression_t;  ///< uncorrected t-ratio on the lagged level
  std::size_t nobs;     ///< observations in the final regression
};

struct AdfOptions {
  std::optional<std::size_t> max_lags;  ///< default: floor(12 (T/100)^{1/4})
  Deterministic deterministic = Deterministic::constant;
  LagSelection lag_selection = LagSelection::bic;
};

struct PpOptions {
  Deterministic deterministic = Deterministic::constant;
  std::optional<std::size_t> bandwidth;  ///< default: floor(4 (T/100)^{2/9})
};

/// Minimum series length accepted by adf_test / pp_test (plus max_lags for ADF).
inline constexpr std::size_t kMinUnitRootLength = 25;

std::size_t schwert_max_lags(std::size_t length);
std::size_t newey_west_bandwidth(std::size_t length);

UnitRootResult adf_test(std::span<const double> series, const AdfOptions& options = {});
UnitRootResult adf_test(const DatedSeries& series, const AdfOptions& options = {});

UnitRootResult pp_test(std::span<const double> series, const PpOptions& options = {});
UnitRootResult pp_test(const DatedSeries& series, const PpOptions& options = {});

/// Asymptotic p-value of a Dickey-Fuller tau statistic (one integrated
/// variable), MacKinnon (1994) response surface.
double mackinnon_p_value(double statistic, Deterministic deterministic);

/// Finite-sample critical values, MacKinnon (2010) response surface.
CriticalValues mackinnon_critical_values(Deterministic deterministic, std::size_t nobs);

}  // namespace garchx
