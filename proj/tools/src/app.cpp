#include "garchx_cli/app.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "garchx/error.hpp"

namespace garchx::cli {

namespace {

Date date_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_date(text);
  } catch (const DataError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::optional<Date> optional_date(const std::string& flag, const std::string& text) {
  if (text.empty()) return std::nullopt;
  return date_flag(flag, text);
}

GarchParams params_flag(const std::string& flag, const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not a number");
    }
  }
  if (v.size() != 5) throw UsageError(flag + ": expected five values a0,a1,b0,b1,b2");
  GarchParams p{v[0], v[1], v[2], v[3], v[4]};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
  return p;
}

struct RawFlags {
  std::string cutoff, fit_start, fit_end, forecast_end;
  std::string params, params2, start_date;
  std::size_t switch_at = 0;
  std::size_t adf_lags = 0;
  std::size_t pp_bandwidth = 0;
};

void write_report(const Report& report, const RunConfig& config, std::ostream& out) {
  if (config.out.empty()) {
    render(report, config.format, out);
    return;
  }
  std::ofstream file(config.out);
  if (!file) throw UsageError("cannot write " + config.out);
  render(report, config.format, file);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  RawFlags raw;

  CLI::App app{"GARCH(1,1) with an exogenous mean regressor: data checks, estimation, forecasting",
               "garchx"};
  app.set_config("--config", "", "Read options from a key = value file (flags take precedence)");
  app.require_subcommand(1, 1);

  const std::map<std::string, ExogTransform> transforms{
      {"diff", ExogTransform::diff}, {"log", ExogTransform::log}, {"none", ExogTransform::none}};
  const std::map<std::string, AlignPolicy> policies{{"intersect", AlignPolicy::intersect},
                                                    {"carry-forward", AlignPolicy::carry_forward}};
  const std::map<std::string, Format> formats{
      {"text", Format::text}, {"csv", Format::csv}, {"json", Format::json}};
  const std::map<std::string, LagSelection> selections{
      {"fixed", LagSelection::fixed}, {"aic", LagSelection::aic}, {"bic", LagSelection::bic}};
  const std::map<std::string, Deterministic> deterministics{
      {"none", Deterministic::none},
      {"constant", Deterministic::constant},
      {"trend", Deterministic::constant_trend}};
  const std::map<std::string, ForecastMode> modes{{"static", ForecastMode::one_step},
                                                  {"dynamic", ForecastMode::dynamic}};
  const std::map<std::string, TheilTarget> theil{{"variance", TheilTarget::variance},
                                                 {"returns", TheilTarget::returns}};

  // Inputs.
  app.add_option("--rates", config.rates, "Exchange-rate CSV file (repeatable)")
      ->check(CLI::ExistingFile);
  app.add_option("--rate-column", config.rate_columns,
                 "Price column to use instead of buy/sell (repeatable)");
  app.add_option("--buy-column", config.buy_column, "Buy quote column")->capture_default_str();
  app.add_option("--sell-column", config.sell_column, "Sell quote column")->capture_default_str();
  app.add_option("--cases", config.cases, "Case-count CSV file")->check(CLI::ExistingFile);
  app.add_option("--cases-column", config.cases_column, "Case-count column")
      ->capture_default_str();
  app.add_option("--exog-transform", config.exog_transform, "Transform applied to case counts")
      ->transform(CLI::CheckedTransformer(transforms))
      ->default_str("diff")
      ->option_text("diff|log|none [diff]");
  app.add_option("--log-shift", config.log_shift, "Constant added before the log transform");
  app.add_option("--align", config.align, "Date join policy")
      ->transform(CLI::CheckedTransformer(policies))
      ->default_str("intersect")
      ->option_text("intersect|carry-forward [intersect]");
  app.add_flag("--drop-missing", config.drop_missing, "Skip rows with missing values");

  // Sample selection.
  app.add_option("--cutoff", raw.cutoff, "Last date of period 1 (split-compare)")->option_text("DATE");
  app.add_option("--fit-start", raw.fit_start, "First date of the estimation sample")->option_text("DATE");
  app.add_option("--fit-end", raw.fit_end, "Last date of the estimation sample")->option_text("DATE");
  app.add_option("--forecast-end", raw.forecast_end, "Last date of the forecast window")->option_text("DATE");

  // Tests and estimation.
  app.add_option("--lags", config.lags, "Ljung-Box lags")->capture_default_str();
  app.add_option("--arch-lags", config.arch_lags, "ARCH-LM lags")->capture_default_str();
  auto* adf = app.add_option("--adf-lags", raw.adf_lags, "ADF lag count (maximum unless fixed)");
  app.add_option("--lag-selection", config.lag_selection, "ADF lag selection rule")
      ->transform(CLI::CheckedTransformer(selections))
      ->default_str("bic")
      ->option_text("fixed|aic|bic [bic]");
  auto* bandwidth = app.add_option("--pp-bandwidth", raw.pp_bandwidth, "Newey-West bandwidth");
  app.add_option("--deterministic", config.deterministic, "Deterministic terms in unit-root regressions")
      ->transform(CLI::CheckedTransformer(deterministics))
      ->default_str("constant")
      ->option_text("none|constant|trend [constant]");
  app.add_option("--max-iter", config.max_iter, "Nelder-Mead iteration cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--forecast-mode", config.forecast_mode, "Forecast type")
      ->transform(CLI::CheckedTransformer(modes))
      ->default_str("static")
      ->option_text("static|dynamic [static]");
  app.add_option("--theil-target", config.theil_target, "Pair compared by Theil U")
      ->transform(CLI::CheckedTransformer(theil))
      ->default_str("variance")
      ->option_text("variance|returns [variance]");

  // Output.
  app.add_option("--format", config.format, "Report format")
      ->transform(CLI::CheckedTransformer(formats))
      ->default_str("text")
      ->option_text("text|csv|json [text]");
  app.add_option("--out", config.out, "Write the report (or simulated CSV) here");
  app.add_option("--plot-out", config.plot_out, "Forecast path CSV (default: <out>.plot.csv)");

  // Simulation.
  app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
  app.add_option("--params", raw.params, "a0,a1,b0,b1,b2");
  app.add_option("--length", config.length, "Observations per series")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--burn-in", config.burn_in, "Discarded leading draws")->capture_default_str();
  app.add_flag("--exog-zeros", config.exog_zeros, "Simulate with a zero regressor");
  app.add_option("--exog-mean", config.exog_mean, "Mean of the simulated regressor");
  app.add_option("--exog-sd", config.exog_sd, "Std. dev. of the simulated regressor");
  app.add_option("--cases-base", config.cases_base, "Case count on the row before the first return");
  app.add_option("--start-date", raw.start_date, "Date of the first simulated return")->option_text("DATE");
  app.add_option("--series", config.series, "Number of rate series")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  auto* switch_at = app.add_option("--switch-at", raw.switch_at,
                                   "0-based index where --params2 takes over");
  app.add_option("--params2", raw.params2, "Second-regime a0,a1,b0,b1,b2");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"stats", "Summary statistics and Jarque-Bera test per series"},
      {"unitroot", "ADF and Phillips-Perron tests per series"},
      {"fit", "Estimate the model for each rate series"},
      {"split-compare", "Fit both sides of --cutoff and compare parameters"},
      {"forecast", "Fit up to --fit-end and score forecasts through --forecast-end"},
      {"simulate", "Generate a synthetic dataset"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage, diag;
    const int code = app.exit(e, usage, diag);
    out << usage.str();
    err << diag.str();
    return code == 0 ? kOk : kUsageError;
  }
  config.command = app.get_subcommands().front()->get_name();

  bool numerical_failure = false;
  try {
    config.cutoff = optional_date("--cutoff", raw.cutoff);
    config.fit_start = optional_date("--fit-start", raw.fit_start);
    config.fit_end = optional_date("--fit-end", raw.fit_end);
    config.forecast_end = optional_date("--forecast-end", raw.forecast_end);
    if (!raw.start_date.empty()) config.start_date = date_flag("--start-date", raw.start_date);
    if (adf->count() > 0) config.adf_lags = raw.adf_lags;
    if (bandwidth->count() > 0) config.pp_bandwidth = raw.pp_bandwidth;
    if (!raw.params.empty()) config.sim_params = params_flag("--params", raw.params);
    if (!raw.params2.empty()) config.sim_params2 = params_flag("--params2", raw.params2);
    if (switch_at->count() > 0) config.switch_at = raw.switch_at;
    if (config.switch_at.has_value() != config.sim_params2.has_value()) {
      throw UsageError("--switch-at and --params2 must be given together");
    }
    if (config.lag_selection == LagSelection::fixed && !config.adf_lags) {
      throw UsageError("--lag-selection fixed requires --adf-lags");
    }

    if (config.command == "simulate") {
      if (config.out.empty()) {
        cmd_simulate(config, out);
      } else {
        std::ofstream file(config.out);
        if (!file) throw UsageError("cannot write " + config.out);
        cmd_simulate(config, file);
      }
      return kOk;
    }

    Report report;
    if (config.command == "stats") {
      report = cmd_stats(config);
    } else if (config.command == "unitroot") {
      report = cmd_unitroot(config);
    } else if (config.command == "fit") {
      report = cmd_fit(config, numerical_failure);
    } else if (config.command == "split-compare") {
      report = cmd_split_compare(config, numerical_failure);
    } else {
      report = cmd_forecast(config, numerical_failure);
    }
    write_report(report, config, out);
  } catch (const UsageError& e) {
    err << "garchx: " << e.what() << '\n';
    return kUsageError;
  } catch (const DataError& e) {
    err << "garchx: data error: " << e.what() << '\n';
    return kDataError;
  } catch (const NumericalError& e) {
    err << "garchx: numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    err << "garchx: " << e.what() << '\n';
    return kUsageError;
  }
  if (numerical_failure) {
    err << "garchx: at least one fit did not converge\n";
    return kNumericalError;
  }
  return kOk;
}

}  // namespace garchx::cli
