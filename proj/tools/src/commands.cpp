#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include "config.hpp"
#include "garchx/csv.hpp"
#include "garchx/descriptive.hpp"
#include "garchx/diagnostics.hpp"
#include "garchx/error.hpp"
#include "garchx/simulate.hpp"

namespace garchx::cli {

namespace {

MissingPolicy missing_policy(const RunConfig& c) {
  return c.drop_missing ? MissingPolicy::drop : MissingPolicy::reject;
}

std::string unique_label(std::string label, std::set<std::string>& used) {
  std::string candidate = label;
  for (int k = 2; used.count(candidate) > 0; ++k) candidate = label + "_" + std::to_string(k);
  used.insert(candidate);
  return candidate;
}

std::vector<DatedSeries> load_returns(const RunConfig& c) {
  if (c.rates.empty()) throw UsageError("--rates is required for '" + c.command + "'");
  std::vector<DatedSeries> out;
  std::set<std::string> used;
  auto push = [&](const DatedSeries& prices) {
    const auto r = log_returns(prices);
    out.push_back(r.with_label(unique_label(prices.label(), used)));
  };
  if (c.rate_columns.empty()) {
    for (const auto& file : c.rates) {
      push(mid_rate(load_quotes(read_csv_file(file), c.buy_column, c.sell_column,
                                missing_policy(c))));
    }
  } else if (c.rates.size() == 1) {
    const auto table = read_csv_file(c.rates.front());
    for (const auto& col : c.rate_columns) push(load_series(table, col, missing_policy(c)));
  } else if (c.rates.size() == c.rate_columns.size()) {
    for (std::size_t i = 0; i < c.rates.size(); ++i) {
      push(load_series(read_csv_file(c.rates[i]), c.rate_columns[i], missing_policy(c)));
    }
  } else {
    throw UsageError("--rate-column must be given once per --rates file, or with a single file");
  }
  return out;
}

DatedSeries load_exog(const RunConfig& c) {
  if (c.cases.empty()) throw UsageError("--cases is required for '" + c.command + "'");
  const auto raw = load_series(read_csv_file(c.cases), c.cases_column, missing_policy(c));
  switch (c.exog_transform) {
    case ExogTransform::diff:
      return first_difference(raw).with_label("d(" + c.cases_column + ")");
    case ExogTransform::log:
      return log_transform(raw, c.log_shift).with_label("log(" + c.cases_column + ")");
    case ExogTransform::none:
      break;
  }
  return raw.with_label(c.cases_column);
}

DateRange sample_range(const RunConfig& c, const AlignedDataset& d) {
  return {c.fit_start.value_or(d.first_date()), c.fit_end.value_or(d.last_date())};
}

Table make_table(std::string name, std::string title, std::vector<std::string> columns) {
  Table t;
  t.name = std::move(name);
  t.title = std::move(title);
  t.columns = std::move(columns);
  return t;
}

std::vector<std::string> labels_of(const std::vector<AlignedDataset>& data) {
  std::vector<std::string> out;
  for (const auto& d : data) out.push_back(d.label());
  return out;
}

std::string yes_no(bool b) { return b ? "Yes" : "No"; }

FitOptions fit_options(const RunConfig& c) {
  FitOptions o;
  o.optimizer.max_iterations = c.max_iter;
  return o;
}

struct NamedFit {
  std::string label;
  GarchFit fit;
};

// Parameter order in the tables: alpha0, alpha1 | beta1 (GARCH), beta2 (ARCH), beta0.
constexpr std::array<std::size_t, 2> kMeanIdx{0, 1};
constexpr std::array<std::size_t, 3> kVarianceIdx{3, 4, 2};
const std::array<std::string, 5> kRowNames{"alpha0", "alpha1", "beta0", "beta1", "beta2"};

template <std::size_t N>
Table parameter_table(const std::string& name, const std::string& title,
                      const std::vector<NamedFit>& fits, const std::array<std::size_t, N>& idx) {
  std::vector<std::string> cols;
  for (const auto& f : fits) cols.push_back(f.label);
  Table t = make_table(name, title, cols);
  for (std::size_t k : idx) {
    Row est{kRowNames[k], {}}, se{kRowNames[k] + " s.e.", {}}, z{kRowNames[k] + " z", {}},
        p{kRowNames[k] + " p", {}};
    for (const auto& f : fits) {
      est.cells.emplace_back(f.fit.params.to_array()[k]);
      se.cells.emplace_back(f.fit.std_errors[k]);
      z.cells.emplace_back(f.fit.z_stats[k]);
      p.cells.emplace_back(f.fit.p_values[k]);
    }
    for (auto* r : {&est, &se, &z, &p}) t.rows.push_back(std::move(*r));
  }
  return t;
}

std::vector<Table> fit_tables(const RunConfig& c, const std::vector<NamedFit>& fits,
                              const std::string& prefix, const std::string& heading) {
  std::vector<std::string> cols;
  for (const auto& f : fits) cols.push_back(f.label);
  std::vector<Table> out;
  out.push_back(parameter_table(prefix + "mean_equation", heading + "Mean equation", fits, kMeanIdx));
  auto variance =
      parameter_table(prefix + "variance_equation", heading + "Variance equation", fits, kVarianceIdx);
  Row persistence{"beta1+beta2", {}};
  for (const auto& f : fits) persistence.cells.emplace_back(f.fit.params.persistence());
  variance.rows.push_back(std::move(persistence));
  out.push_back(std::move(variance));

  Table summary = make_table(prefix + "estimation", heading + "Estimation", cols);
  Row nobs{"Observations", {}}, ll{"Log-likelihood", {}}, conv{"Converged", {}},
      iters{"Iterations", {}};
  for (const auto& f : fits) {
    nobs.cells.emplace_back(static_cast<double>(f.fit.nobs()));
    ll.cells.emplace_back(f.fit.log_likelihood);
    conv.cells.emplace_back(yes_no(f.fit.converged));
    iters.cells.emplace_back(static_cast<double>(f.fit.iterations));
  }
  summary.rows = {nobs, ll, conv, iters};
  out.push_back(std::move(summary));

  Table diag = make_table(prefix + "diagnostics",
                          heading + "Diagnostics on standardized residuals (5% level)", cols);
  const std::string lb_name = "Ljung-Box Q(" + std::to_string(c.lags) + ")";
  const std::string lm_name = "ARCH-LM(" + std::to_string(c.arch_lags) + ")";
  Row lb{lb_name, {}}, lb_p{lb_name + " p", {}}, serial{"Serial correlation", {}};
  Row lm{lm_name, {}}, lm_p{lm_name + " p", {}}, arch{"ARCH effect", {}};
  Row jb{"Jarque-Bera", {}}, jb_p{"Jarque-Bera p", {}};
  for (const auto& f : fits) {
    const auto z = f.fit.std_residuals.values();
    const auto q = ljung_box(z, c.lags);
    const auto a = arch_lm(z, c.arch_lags);
    const auto s = summary_stats(z);
    lb.cells.emplace_back(q.statistic);
    lb_p.cells.emplace_back(q.p_value);
    serial.cells.emplace_back(yes_no(q.rejected()));
    lm.cells.emplace_back(a.statistic);
    lm_p.cells.emplace_back(a.p_value);
    arch.cells.emplace_back(yes_no(a.rejected()));
    jb.cells.emplace_back(s.jarque_bera);
    jb_p.cells.emplace_back(s.jb_p_value);
  }
  diag.rows = {lb, lb_p, serial, lm, lm_p, arch, jb, jb_p};
  out.push_back(std::move(diag));
  return out;
}

void collect_warnings(const std::vector<NamedFit>& fits, const std::string& where, Report& r,
                      bool& numerical_failure) {
  for (const auto& f : fits) {
    for (const auto& w : f.fit.warnings) r.notes.push_back(f.label + where + ": " + w);
    if (!f.fit.converged) numerical_failure = true;
  }
}

std::string range_text(const AlignedDataset& d) {
  return format_date(d.first_date()) + " to " + format_date(d.last_date());
}

}  // namespace

Inputs load_inputs(const RunConfig& config) {
  auto returns = load_returns(config);
  auto exog = load_exog(config);
  std::vector<AlignedDataset> datasets;
  for (const auto& r : returns) datasets.push_back(align(r, exog, config.align));
  return {std::move(returns), std::move(exog), std::move(datasets)};
}

Report cmd_stats(const RunConfig& config) {
  const auto in = load_inputs(config);
  std::vector<std::pair<std::string, SummaryStats>> columns;
  for (const auto& d : in.datasets) {
    columns.emplace_back(d.label(), summary_stats(d.slice(sample_range(config, d)).returns()));
  }
  const auto& first = in.datasets.front();
  columns.emplace_back(in.exog.label(),
                       summary_stats(first.slice(sample_range(config, first)).exog()));

  std::vector<std::string> names;
  for (const auto& [name, s] : columns) names.push_back(name);
  Table t = make_table("summary", "Summary statistics", names);
  const std::vector<std::pair<std::string, double SummaryStats::*>> rows{
      {"Mean", &SummaryStats::mean},          {"Median", &SummaryStats::median},
      {"Maximum", &SummaryStats::max},        {"Minimum", &SummaryStats::min},
      {"Std. Dev.", &SummaryStats::std_dev},  {"Skewness", &SummaryStats::skewness},
      {"Kurtosis", &SummaryStats::kurtosis},  {"Jarque-Bera", &SummaryStats::jarque_bera},
      {"Probability", &SummaryStats::jb_p_value}};
  for (const auto& [label, member] : rows) {
    Row row{label, {}};
    for (const auto& [name, s] : columns) row.cells.emplace_back(s.*member);
    t.rows.push_back(std::move(row));
  }
  Report r{"stats", {t}, {}};
  r.notes.push_back("observations: " + std::to_string(columns.front().second.n));
  return r;
}

Report cmd_unitroot(const RunConfig& config) {
  const auto in = load_inputs(config);
  AdfOptions adf;
  adf.max_lags = config.adf_lags;
  adf.deterministic = config.deterministic;
  adf.lag_selection = config.lag_selection;
  PpOptions pp;
  pp.deterministic = config.deterministic;
  pp.bandwidth = config.pp_bandwidth;

  Table t = make_table("unit_root", "Unit root tests: statistic(p-value)",
                       {"ADF", "ADF p", "PP", "PP p", "ADF lags", "PP bandwidth"});
  t.paired_columns = 4;
  auto add = [&](const std::string& label, std::span<const double> v) {
    const auto a = adf_test(v, adf);
    const auto p = pp_test(v, pp);
    t.rows.push_back({label,
                      {a.statistic, a.p_value, p.statistic, p.p_value,
                       static_cast<double>(a.lags_used), static_cast<double>(p.lags_used)}});
  };
  for (const auto& d : in.datasets) add(d.label(), d.slice(sample_range(config, d)).returns());
  const auto& first = in.datasets.front();
  add(in.exog.label(), first.slice(sample_range(config, first)).exog());
  return {"unitroot", {t}, {"null hypothesis: unit root"}};
}

Report cmd_fit(const RunConfig& config, bool& numerical_failure) {
  const auto in = load_inputs(config);
  std::vector<NamedFit> fits;
  for (const auto& d : in.datasets) {
    fits.push_back({d.label(), fit(d.slice(sample_range(config, d)), fit_options(config))});
  }
  Report r{"fit", fit_tables(config, fits, "", ""), {}};
  collect_warnings(fits, "", r, numerical_failure);
  return r;
}

Report cmd_split_compare(const RunConfig& config, bool& numerical_failure) {
  if (!config.cutoff) throw UsageError("split-compare requires --cutoff");
  const auto in = load_inputs(config);
  std::vector<NamedFit> first, second;
  Report r{"split-compare", {}, {}};
  for (const auto& d : in.datasets) {
    const auto [a, b] = split_period(d.slice(sample_range(config, d)), *config.cutoff);
    r.notes.push_back(d.label() + ": period 1 " + range_text(a) + ", period 2 " + range_text(b));
    first.push_back({d.label(), fit(a, fit_options(config))});
    second.push_back({d.label(), fit(b, fit_options(config))});
  }
  for (auto& t : fit_tables(config, first, "period_1.", "Period 1: ")) r.tables.push_back(t);
  for (auto& t : fit_tables(config, second, "period_2.", "Period 2: ")) r.tables.push_back(t);

  Table delta = make_table("delta", "Period 2 minus period 1", labels_of(in.datasets));
  for (std::size_t k : {0, 1, 2, 3, 4}) {
    Row d{kRowNames[k] + " delta", {}}, z{kRowNames[k] + " z(diff)", {}};
    for (std::size_t i = 0; i < first.size(); ++i) {
      const double diff = second[i].fit.params.to_array()[k] - first[i].fit.params.to_array()[k];
      const double se = std::hypot(first[i].fit.std_errors[k], second[i].fit.std_errors[k]);
      d.cells.emplace_back(diff);
      z.cells.emplace_back(diff / se);
    }
    delta.rows.push_back(std::move(d));
    delta.rows.push_back(std::move(z));
  }
  Row flip{"alpha1 sign change", {}}, s1{"beta1+beta2 period 1", {}}, s2{"beta1+beta2 period 2", {}};
  for (std::size_t i = 0; i < first.size(); ++i) {
    const double a1 = first[i].fit.params.exog_coef;
    const double a2 = second[i].fit.params.exog_coef;
    flip.cells.emplace_back(yes_no(a1 * a2 < 0.0));
    s1.cells.emplace_back(first[i].fit.params.persistence());
    s2.cells.emplace_back(second[i].fit.params.persistence());
  }
  delta.rows.push_back(std::move(flip));
  delta.rows.push_back(std::move(s1));
  delta.rows.push_back(std::move(s2));
  r.tables.push_back(std::move(delta));

  collect_warnings(first, " (period 1)", r, numerical_failure);
  collect_warnings(second, " (period 2)", r, numerical_failure);
  return r;
}

Report cmd_forecast(const RunConfig& config, bool& numerical_failure) {
  if (!config.fit_end || !config.forecast_end) {
    throw UsageError("forecast requires --fit-end and --forecast-end");
  }
  if (*config.forecast_end <= *config.fit_end) {
    throw UsageError("--forecast-end must be after --fit-end");
  }
  const auto in = load_inputs(config);
  std::vector<NamedFit> fits;
  std::vector<ForecastResult> paths;
  Report r{"forecast", {}, {}};
  Table t = make_table("forecast_evaluation",
                       std::string("Forecast evaluation (") + to_string(config.forecast_mode) + ")",
                       labels_of(in.datasets));
  Row rmse_row{"RMSE", {}}, mae_row{"MAE", {}}, theil_row{"Theil U", {}}, n_row{"Observations", {}};
  for (const auto& d : in.datasets) {
    const auto sample = d.slice(sample_range(config, d));
    auto f = fit(sample, fit_options(config));
    const DateRange window{*config.fit_end + std::chrono::days{1}, *config.forecast_end};
    auto path = config.forecast_mode == ForecastMode::dynamic ? forecast_dynamic(f, d, window)
                                                              : forecast_static(f, d, window);
    const auto ev = evaluate(path, d, config.theil_target);
    rmse_row.cells.emplace_back(ev.rmse);
    mae_row.cells.emplace_back(ev.mae);
    theil_row.cells.emplace_back(ev.theil_u);
    n_row.cells.emplace_back(static_cast<double>(ev.n));
    r.notes.push_back(d.label() + ": fit " + range_text(sample) + ", forecast origin " +
                      format_date(path.origin));
    fits.push_back({d.label(), std::move(f)});
    paths.push_back(std::move(path));
  }
  t.rows = {rmse_row, mae_row, theil_row, n_row};
  r.tables.push_back(std::move(t));
  collect_warnings(fits, "", r, numerical_failure);

  std::string plot = config.plot_out;
  if (plot.empty() && !config.out.empty()) plot = config.out + ".plot.csv";
  if (!plot.empty()) {
    std::ofstream file(plot);
    if (!file) throw UsageError("cannot write " + plot);
    file << "series,date,return,squared_return,mean_forecast,variance_forecast\n";
    char buf[160];
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto& d = in.datasets[i];
      std::size_t row = 0;
      for (std::size_t k = 0; k < paths[i].dates.size(); ++k) {
        while (d.dates()[row] != paths[i].dates[k]) ++row;
        const double ret = d.returns()[row];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", ret, ret * ret,
                      paths[i].mean_forecast[k], paths[i].variance_forecast[k]);
        file << d.label() << ',' << format_date(paths[i].dates[k]) << ',' << buf << '\n';
      }
    }
    r.notes.push_back("forecast path written to " + plot);
  }
  return r;
}

void cmd_simulate(const RunConfig& config, std::ostream& out) {
  SimConfig base;
  base.params = config.sim_params;
  base.length = config.length;
  base.burn_in = config.burn_in;
  base.seed = config.seed;
  base.start_date = config.start_date;
  if (config.exog_zeros) {
    base.exog = ExogZeros{};
  } else {
    base.exog = ExogNormal{config.exog_mean, config.exog_sd};
  }
  if (config.switch_at) base.regime = RegimeSwitch{*config.switch_at, *config.sim_params2};

  std::vector<Simulation> sims;
  sims.push_back(simulate(base));
  for (std::size_t i = 1; i < config.series; ++i) {
    SimConfig next = base;
    next.seed = config.seed + i;
    next.exog = sims.front().exog;
    sims.push_back(simulate(next));
  }

  // Levels whose log returns and first differences give back the simulated draws.
  out << "date,cases";
  for (std::size_t i = 0; i < sims.size(); ++i) out << ",rate_" << i + 1;
  out << '\n';
  const std::size_t n = sims.front().returns.size();
  std::vector<double> log_level(sims.size(), 0.0);
  double cases = config.cases_base;
  char buf[64];
  auto emit = [&](Date date) {
    out << format_date(date);
    std::snprintf(buf, sizeof buf, ",%.17g", cases);
    out << buf;
    for (double l : log_level) {
      std::snprintf(buf, sizeof buf, ",%.17g", 100.0 * std::exp(l));
      out << buf;
    }
    out << '\n';
  };
  emit(config.start_date - std::chrono::days{1});
  for (std::size_t t = 0; t < n; ++t) {
    cases += sims.front().exog[t];
    for (std::size_t i = 0; i < sims.size(); ++i) log_level[i] += sims[i].returns[t];
    emit(sims.front().dates[t]);
  }
}

}  // namespace garchx::cli
