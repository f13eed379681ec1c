// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: garchx_acceptance [criterion numbers...]

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "garchx/descriptive.hpp"
#include "garchx/diagnostics.hpp"
#include "garchx/forecast.hpp"
#include "garchx/garch.hpp"
#include "garchx/numdiff.hpp"
#include "garchx/simulate.hpp"
#include "garchx/unitroot.hpp"
#include "oracles.hpp"
#include "report_parsers.hpp"
#include "test_util.hpp"

#ifndef GARCHX_EXE
#error "GARCHX_EXE must name the garchx executable"
#endif

namespace {

using namespace garchx;
namespace fs = std::filesystem;

struct Outcome {
  bool pass;
  std::string detail;
};

const GarchParams kTruth{0.0, 0.5, 0.1, 0.8, 0.1};

// Every converged fit made anywhere in the suite, for the stationarity check.
std::vector<GarchFit> g_converged_fits;

void record(const GarchFit& f) {
  if (f.converged) g_converged_fits.push_back(f);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int shell(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("garchx_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string exe() { return std::string("\"") + GARCHX_EXE + "\""; }

Outcome jarque_bera_closed_form() {
  const auto full = jarque_bera(212, -3.127140, 31.13329);
  const auto reduced = jarque_bera(212, -0.8593, 8.100);
  const bool ok = std::fabs(full.statistic - 7336.95) <= 0.5 &&
                  std::fabs(reduced.statistic - 255.88) <= 0.5;
  return {ok, fmt("JB = %.3f (target 7336.95 +/- 0.5), %.3f (target 255.88 +/- 0.5)",
                  full.statistic, reduced.statistic)};
}

Outcome parameter_recovery() {
  int all_within = 0;
  std::array<int, 5> per_param{};
  std::vector<double> persistence_error;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sim = simulate({kTruth, 5000, 500, 1000 + seed});
    const auto f = fit(sim.dataset());
    record(f);
    const auto est = f.params.to_array(), truth = kTruth.to_array();
    bool all = true;
    for (int k = 0; k < 5; ++k) {
      const bool within = std::fabs(est[k] - truth[k]) <= 3.0 * f.std_errors[k];
      per_param[k] += within;
      all = all && within;
    }
    all_within += all;
    persistence_error.push_back(std::fabs(f.params.persistence() - kTruth.persistence()));
  }
  const double med = median(persistence_error);
  const bool ok = all_within >= 18 && med <= 0.03;
  std::ostringstream s;
  s << "runs with all 5 params within 3 SE: " << all_within << "/20 (per param:";
  for (int c : per_param) s << ' ' << c;
  s << "); median |persistence error| = " << fmt("%.4f", med) << " (<= 0.03)";
  return {ok, s.str()};
}

Outcome stationarity_contract() {
  // Stress fits near the boundary in addition to everything fitted so far.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    record(fit(simulate({{0.0, 0.5, 0.02, 0.9, 0.095}, 1000, 500, 500 + seed}).dataset()));
    record(fit(simulate({{0.0, 0.5, 1.0, 0.0, 0.0}, 500, 0, 600 + seed}).dataset()));
  }
  std::size_t bad = 0;
  for (const auto& f : g_converged_fits) {
    const auto& p = f.params;
    if (!(p.persistence() < 1.0 && p.var_intercept > 0.0 && p.garch > 0.0 && p.arch > 0.0)) ++bad;
  }
  const GarchParams bdt_usd{0.0, 0.0, 2.76e-11, 0.4910, 0.2695};
  bool example_ok = std::fabs(bdt_usd.persistence() - 0.7605) < 1e-12 &&
                    bdt_usd.persistence() < 1.0;
  try {
    bdt_usd.validate();
  } catch (const std::exception&) {
    example_ok = false;
  }
  return {bad == 0 && example_ok && !g_converged_fits.empty(),
          std::to_string(g_converged_fits.size() - bad) + "/" +
              std::to_string(g_converged_fits.size()) +
              " converged fits stationary with positive variance parameters; 0.4910 + 0.2695 = " +
              fmt("%.4f", bdt_usd.persistence()) + " < 1"};
}

Outcome gradient_check() {
  const auto sim = simulate({{0.1, 0.5, 0.2, 0.7, 0.2}, 500, 200, 31});
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double g = 0.05 + 0.85 * u(rng);
    const double a = (0.98 - g) * (0.02 + 0.96 * u(rng));
    const GarchParams p{u(rng) - 0.5, 2.0 * u(rng) - 1.0, 0.05 + u(rng), g, a};
    const double h0 = 0.5 + u(rng);
    const Objective ll = [&](std::span<const double> v) {
      return log_likelihood(GarchParams::from_array(std::span<const double, 5>(v.data(), 5)),
                            sim.returns, sim.exog, h0);
    };
    const auto point = p.to_array();
    const Eigen::VectorXd fd = numerical_gradient(ll, point);
    const auto ref = oracle::analytic_gradient({p.mean_intercept, p.exog_coef, p.var_intercept,
                                                p.garch, p.arch},
                                               sim.returns, sim.exog, h0);
    const Eigen::Map<const Eigen::VectorXd> exact(ref.data(), 5);
    worst = std::max(worst, (fd - exact).norm() / exact.norm());
  }
  return {worst <= 1e-5, fmt("worst relative gradient error over 100 points: %.3g (<= 1e-5)", worst)};
}

Outcome unit_root_calibration() {
  const int reps = 500;
  const std::size_t n = 200;
  int adf_rw = 0, pp_rw = 0, adf_wn = 0, pp_wn = 0;
  for (int rep = 0; rep < reps; ++rep) {
    const auto noise = testing::normal_draws(n, 40000 + rep);
    const auto walk = testing::cumsum(noise);
    adf_rw += adf_test(walk).p_value < 0.05;
    pp_rw += pp_test(walk).p_value < 0.05;
    adf_wn += adf_test(noise).p_value < 0.05;
    pp_wn += pp_test(noise).p_value < 0.05;
  }
  auto rate = [&](int k) { return static_cast<double>(k) / reps; };
  const bool ok = std::fabs(rate(adf_rw) - 0.05) <= 0.03 && std::fabs(rate(pp_rw) - 0.05) <= 0.03 &&
                  rate(adf_wn) >= 0.99 && rate(pp_wn) >= 0.99;
  return {ok, fmt("size on random walk ADF %.3f PP %.3f (0.05 +/- 0.03); power on white noise "
                  "ADF %.3f PP %.3f (>= 0.99)",
                  rate(adf_rw), rate(pp_rw), rate(adf_wn), rate(pp_wn))};
}

Outcome diagnostic_calibration() {
  int lb_rej = 0, lm_rej = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto z = testing::normal_draws(2000, 70000 + rep);
    lb_rej += ljung_box(z, 10).rejected();
    lm_rej += arch_lm(z, 5).rejected();
  }
  const GarchParams strong{0.0, 0.5, 0.05, 0.8, 0.15};
  int raw_detected = 0, whitened = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sim = simulate({strong, 2000, 500, 9000 + seed});
    raw_detected += arch_lm(sim.returns, 5).p_value < 0.01;
    const auto f = fit(sim.dataset());
    record(f);
    whitened += !arch_lm(f.std_residuals.values(), 5).rejected();
  }
  const double lb = lb_rej / 1000.0, lm = lm_rej / 1000.0;
  const bool ok = std::fabs(lb - 0.05) <= 0.02 && std::fabs(lm - 0.05) <= 0.02 &&
                  raw_detected == 100 && whitened >= 90;
  return {ok, fmt("iid size LB %.3f ARCH-LM %.3f (0.05 +/- 0.02); raw GARCH p < 0.01 in %.0f/100; "
                  "fitted residuals clean in %.0f/100 (>= 90)",
                  lb, lm, raw_detected, whitened)};
}

Outcome metric_identities() {
  std::mt19937_64 rng(10000);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> len(1, 60);
  int bad = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t m = len(rng);
    std::vector<double> x(m), y(m), zero(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = n01(rng) * std::exp(n01(rng));
      y[i] = n01(rng) * std::exp(n01(rng));
    }
    const double u = theil_u(x, y);
    bad += !(u >= 0.0 && u <= 1.0);
    bad += theil_u(x, x) != 0.0;
    bad += std::fabs(theil_u(x, zero) - 1.0) > 1e-15;
    bad += !(rmse(x, y) >= mae(x, y) * (1.0 - 1e-15));
  }
  const GarchParams p{0.0, 0.0, 0.2, 0.6, 0.25};
  const auto sim = simulate({p, 600, 100, 3});
  const auto data = sim.dataset();
  const ForecastOrigin origin{p, data.dates()[99], 6.0, 2.0};
  const auto path = forecast_dynamic(origin, data, {data.dates()[100], data.dates()[599]});
  const double gap = std::fabs(path.variance_forecast.back() - unconditional_variance(p));
  return {bad == 0 && gap <= 1e-6,
          fmt("%.0f identity violations over 10000 pairs; dynamic forecast gap after 500 steps "
              "%.3g (<= 1e-6)",
              bad, gap)};
}

Outcome pipeline_round_trip() {
  const auto dir = work_dir();
  const auto csv = (dir / "pipeline.csv").string();
  const std::string inputs = " --rates " + csv + " --rate-column rate_1 --cases " + csv;
  if (shell(exe() + " simulate --seed 4242 --length 5000 --params 0,0.5,0.1,0.8,0.1 --out " + csv) != 0) {
    return {false, "simulate failed"};
  }
  const std::vector<std::pair<std::string, std::string>> formats{
      {"json", "fit.json"}, {"csv", "fit.csv"}, {"text", "fit.txt"}};
  for (const auto& [format, file] : formats) {
    const int code = shell(exe() + " fit" + inputs + " --format " + format + " --out " +
                           (dir / file).string());
    if (code != 0) return {false, "fit --format " + format + " exited " + std::to_string(code)};
  }
  const auto doc = nlohmann::json::parse(testing::slurp((dir / "fit.json").string()));
  const auto json = testing::flatten_json(doc);
  const bool csv_agrees = json == testing::flatten_csv(testing::slurp((dir / "fit.csv").string()));
  const bool text_agrees =
      json == testing::flatten_text(testing::slurp((dir / "fit.txt").string()), doc);

  const std::array<std::pair<const char*, const char*>, 5> rows{{{"mean_equation", "alpha0"},
                                                                 {"mean_equation", "alpha1"},
                                                                 {"variance_equation", "beta0"},
                                                                 {"variance_equation", "beta1"},
                                                                 {"variance_equation", "beta2"}}};
  const auto truth = kTruth.to_array();
  int within = 0;
  std::ostringstream est;
  for (std::size_t k = 0; k < 5; ++k) {
    const double v = testing::json_row(doc, rows[k].first, rows[k].second).at(0);
    const double se =
        testing::json_row(doc, rows[k].first, std::string(rows[k].second) + " s.e.").at(0);
    within += std::fabs(v - truth[k]) <= 3.0 * se;
    est << ' ' << rows[k].second << '=' << v;
  }
  const bool ok = within == 5 && csv_agrees && text_agrees;
  return {ok, std::to_string(within) + "/5 within 3 SE (" + est.str().substr(1) +
                  "); csv==json " + (csv_agrees ? "yes" : "no") + ", text==json " +
                  (text_agrees ? "yes" : "no") + " over " + std::to_string(json.size()) + " cells"};
}

Outcome structural_break() {
  const auto dir = work_dir();
  int flipped = 0;
  for (int seed = 0; seed < 20; ++seed) {
    const auto csv = (dir / ("break_" + std::to_string(seed) + ".csv")).string();
    const auto report = (dir / ("break_" + std::to_string(seed) + ".json")).string();
    // 400 returns from 2020-01-01; index 200 is 2020-07-19, so period 1 ends 2020-07-18.
    shell(exe() + " simulate --length 400 --seed " + std::to_string(300 + seed) +
          " --params 0,-0.5,0.1,0.8,0.1 --switch-at 200 --params2 0,0.5,0.1,0.8,0.1 --out " + csv);
    const int code = shell(exe() + " split-compare --rates " + csv + " --rate-column rate_1 --cases " +
                           csv + " --cutoff 2020-07-18 --format json --out " + report);
    if (code != 0 && code != 3) continue;
    const auto doc = nlohmann::json::parse(testing::slurp(report));
    const double a1 = testing::json_row(doc, "period_1.mean_equation", "alpha1").at(0);
    const double a2 = testing::json_row(doc, "period_2.mean_equation", "alpha1").at(0);
    flipped += a1 < 0.0 && a2 > 0.0;
  }
  return {flipped >= 18, std::to_string(flipped) + "/20 runs with alpha1 negative then positive (>= 18)"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Jarque-Bera closed form", jarque_bera_closed_form},
      {"parameter recovery", parameter_recovery},
      {"stationarity contract", stationarity_contract},
      {"gradient check", gradient_check},
      {"unit-root calibration", unit_root_calibration},
      {"diagnostic calibration", diagnostic_calibration},
      {"metric identities", metric_identities},
      {"pipeline round trip", pipeline_round_trip},
      {"structural-break detection", structural_break},
  };

  // The stationarity contract inspects every fit made by the other criteria, so it runs last.
  std::vector<std::size_t> order{0, 1, 3, 4, 5, 6, 7, 8, 2};
  std::vector<std::optional<std::pair<Outcome, double>>> results(criteria.size());
  for (std::size_t i : order) {
    if (!only.empty() && only.count(static_cast<int>(i) + 1) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results[i] = {o, secs};
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!results[i]) continue;
    const auto& [o, secs] = *results[i];
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " " << criteria[i].first
              << ": " << o.detail << fmt(" [%.1fs]", secs) << std::endl;
  }
  fs::remove_all(work_dir());
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
