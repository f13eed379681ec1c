#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "garchx/date.hpp"
#include "garchx/forecast.hpp"
#include "garchx/garch.hpp"
#include "garchx/timeseries.hpp"
#include "garchx/unitroot.hpp"
#include "garchx_cli/report.hpp"

namespace garchx::cli {

/// Bad flag combination or value; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExogTransform { diff, log, none };

struct RunConfig {
  std::string command;

  std::vector<std::string> rates;
  std::vector<std::string> rate_columns;
  std::string buy_column = "buy";
  std::string sell_column = "sell";
  std::string cases;
  std::string cases_column = "cases";
  ExogTransform exog_transform = ExogTransform::diff;
  double log_shift = 0.0;
  AlignPolicy align = AlignPolicy::intersect;
  bool drop_missing = false;

  std::optional<Date> cutoff;
  std::optional<Date> fit_start;
  std::optional<Date> fit_end;
  std::optional<Date> forecast_end;

  std::size_t lags = 10;
  std::size_t arch_lags = 5;
  std::optional<std::size_t> adf_lags;
  LagSelection lag_selection = LagSelection::bic;
  std::optional<std::size_t> pp_bandwidth;
  Deterministic deterministic = Deterministic::constant;
  std::size_t max_iter = 2000;
  ForecastMode forecast_mode = ForecastMode::one_step;
  TheilTarget theil_target = TheilTarget::variance;

  Format format = Format::text;
  std::string out;
  std::string plot_out;

  std::uint64_t seed = 0;
  GarchParams sim_params{0.0, 0.5, 0.1, 0.8, 0.1};
  std::size_t length = 1000;
  std::size_t burn_in = 500;
  bool exog_zeros = false;
  double exog_mean = 0.0;
  double exog_sd = 1.0;
  double cases_base = 0.0;
  Date start_date = Date{std::chrono::year{2020} / 1 / 1};
  std::size_t series = 1;
  std::optional<std::size_t> switch_at;
  std::optional<GarchParams> sim_params2;
};

/// Transformed inputs: one aligned dataset per return series.
struct Inputs {
  std::vector<DatedSeries> returns;
  DatedSeries exog;
  std::vector<AlignedDataset> datasets;
};

Inputs load_inputs(const RunConfig& config);

/// Command bodies. Each returns the report and sets `numerical_failure` when
/// any fit did not converge.
Report cmd_stats(const RunConfig& config);
Report cmd_unitroot(const RunConfig& config);
Report cmd_fit(const RunConfig& config, bool& numerical_failure);
Report cmd_split_compare(const RunConfig& config, bool& numerical_failure);
Report cmd_forecast(const RunConfig& config, bool& numerical_failure);
/// Writes the simulated CSV to `out`.
void cmd_simulate(const RunConfig& config, std::ostream& out);

}  // namespace garchx::cli
