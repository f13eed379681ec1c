#include "garchx/unitroot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "garchx/distributions.hpp"
#include "garchx/error.hpp"
#include "garchx/ols.hpp"

namespace garchx {

namespace {

// MacKinnon (1994), "Approximate asymptotic distribution functions for
// unit-root and cointegration tests", Table 3 (N = 1). Values as tabulated in
// statsmodels' adfvalues.py. The p-value is Phi(poly(tau)) with the small-p
// polynomial below tau_star and the large-p polynomial above it.
struct PValueSurface {
  double tau_max;
  double tau_min;
  double tau_star;
  std::array<double, 3> small_p;
  std::array<double, 4> large_p;
};

constexpr PValueSurface kSurfaceNone{1.51, -18.83, -1.04,
                                     {0.6344, 1.2378, 3.2496e-2},
                                     {0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2}};
constexpr PValueSurface kSurfaceConstant{2.74, -18.83, -1.61,
                                         {2.1659, 1.4412, 3.8269e-2},
                                         {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2}};
constexpr PValueSurface kSurfaceTrend{0.7, -16.18, -2.89,
                                      {3.2512, 1.6047, 4.9588e-2},
                                      {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2}};

// MacKinnon (2010), "Critical values for cointegration tests", Table 2
// (N = 1): crit(T) = b0 + b1/T + b2/T^2 + b3/T^3 for the 1%, 5%, 10% levels.
using CritRow = std::array<double, 4>;
constexpr std::array<CritRow, 3> kCritNone{{{-2.56574, -2.2358, -3.627, 0.0},
                                            {-1.94100, -0.2686, -3.365, 31.223},
                                            {-1.61682, 0.2656, -2.714, 25.364}}};
constexpr std::array<CritRow, 3> kCritConstant{{{-3.43035, -6.5393, -16.786, -79.433},
                                                {-2.86154, -2.8903, -4.234, -40.040},
                                                {-2.56677, -1.5384, -2.809, 0.0}}};
constexpr std::array<CritRow, 3> kCritTrend{{{-3.95877, -9.0531, -28.428, -134.155},
                                             {-3.41049, -4.3904, -9.036, -45.374},
                                             {-3.12705, -2.5856, -3.925, -22.380}}};

const PValueSurface& surface(Deterministic d) {
  switch (d) {
    case Deterministic::none: return kSurfaceNone;
    case Deterministic::constant: return kSurfaceConstant;
    case Deterministic::constant_trend: return kSurfaceTrend;
  }
  return kSurfaceConstant;
}

const std::array<CritRow, 3>& crit_table(Deterministic d) {
  switch (d) {
    case Deterministic::none: return kCritNone;
    case Deterministic::constant: return kCritConstant;
    case Deterministic::constant_trend: return kCritTrend;
  }
  return kCritConstant;
}

std::size_t deterministic_columns(Deterministic d) {
  switch (d) {
    case Deterministic::none: return 0;
    case Deterministic::constant: return 1;
    case Deterministic::constant_trend: return 2;
  }
  return 0;
}

void require_non_degenerate(std::span<const double> y) {
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  if (*lo == *hi) throw DataError("degenerate series: all values equal");
}

// Dickey-Fuller regression of dy[t] on y[t-1], deterministics and `lags`
// lagged differences, using rows t = first..T-1 of the original series.
OlsResult df_regression(std::span<const double> y, std::size_t lags, std::size_t first,
                        Deterministic det) {
  const std::size_t rows = y.size() - first;
  const std::size_t ndet = deterministic_columns(det);
  Eigen::MatrixXd x(rows, 1 + ndet + lags);
  Eigen::VectorXd dy(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = first + r;
    dy[r] = y[t] - y[t - 1];
    x(r, 0) = y[t - 1];
    if (ndet >= 1) x(r, 1) = 1.0;
    if (ndet >= 2) x(r, 2) = static_cast<double>(t);
    for (std::size_t j = 1; j <= lags; ++j) x(r, ndet + j) = y[t - j] - y[t - j - 1];
  }
  auto res = ols(x, dy);
  if (!(res.rss > 0.0) || !std::isfinite(res.t_stats[0])) {
    throw DataError("degenerate series: Dickey-Fuller regression has zero residual variance");
  }
  return res;
}

double information_criterion(const OlsResult& r, LagSelection sel) {
  const double n = static_cast<double>(r.nobs);
  const double k = static_cast<double>(r.nparams);
  const double fit = n * std::log(r.rss / n);
  return sel == LagSelection::aic ? fit + 2.0 * k : fit + k * std::log(n);
}

}  // namespace

std::size_t schwert_max_lags(std::size_t length) {
  return static_cast<std::size_t>(
      std::floor(12.0 * std::pow(static_cast<double>(length) / 100.0, 0.25)));
}

std::size_t newey_west_bandwidth(std::size_t length) {
  return static_cast<std::size_t>(
      std::floor(4.0 * std::pow(static_cast<double>(length) / 100.0, 2.0 / 9.0)));
}

double mackinnon_p_value(double statistic, Deterministic deterministic) {
  const auto& s = surface(deterministic);
  if (std::isnan(statistic)) return statistic;
  if (statistic > s.tau_max) return 1.0;
  if (statistic < s.tau_min) return 0.0;
  double poly = 0.0;
  if (statistic <= s.tau_star) {
    for (auto it = s.small_p.rbegin(); it != s.small_p.rend(); ++it) poly = poly * statistic + *it;
  } else {
    for (auto it = s.large_p.rbegin(); it != s.large_p.rend(); ++it) poly = poly * statistic + *it;
  }
  return normal_cdf(poly);
}

CriticalValues mackinnon_critical_values(Deterministic deterministic, std::size_t nobs) {
  const auto& table = crit_table(deterministic);
  const double inv = 1.0 / static_cast<double>(nobs);
  std::array<double, 3> cv{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& b = table[i];
    cv[i] = b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
  }
  return {cv[0], cv[1], cv[2]};
}

UnitRootResult adf_test(std::span<const double> y, const AdfOptions& options) {
  const std::size_t n = y.size();
  const std::size_t max_lags = options.max_lags.value_or(schwert_max_lags(n));
  if (n < kMinUnitRootLength + max_lags) {
    throw DataError("ADF test needs at least " + std::to_string(kMinUnitRootLength + max_lags) +
                    " observations, got " + std::to_string(n));
  }
  require_non_degenerate(y);

  const std::size_t ndet = deterministic_columns(options.deterministic);
  if (n - 1 - max_lags <= 1 + ndet + max_lags) {
    throw DataError("ADF lag search exhausts the sample");
  }

  std::size_t lags = max_lags;
  if (options.lag_selection != LagSelection::fixed) {
    // Compare candidate lag orders on the common sample that the largest one allows.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p <= max_lags; ++p) {
      const auto r = df_regression(y, p, max_lags + 1, options.deterministic);
      const double ic = information_criterion(r, options.lag_selection);
      if (ic < best) {
        best = ic;
        lags = p;
      }
    }
  }

  const auto reg = df_regression(y, lags, lags + 1, options.deterministic);
  UnitRootResult out{};
  out.statistic = reg.t_stats[0];
  out.regression_t = out.statistic;
  out.p_value = mackinnon_p_value(out.statistic, options.deterministic);
  out.lags_used = lags;
  out.deterministic = options.deterministic;
  out.nobs = reg.nobs;
  out.critical_values = mackinnon_critical_values(options.deterministic, reg.nobs);
  return out;
}

UnitRootResult adf_test(const DatedSeries& series, const AdfOptions& options) {
  return adf_test(series.values(), options);
}

UnitRootResult pp_test(std::span<const double> y, const PpOptions& options) {
  const std::size_t n = y.size();
  if (n < kMinUnitRootLength) {
    throw DataError("PP test needs at least " + std::to_string(kMinUnitRootLength) +
                    " observations, got " + std::to_string(n));
  }
  require_non_degenerate(y);

  const auto reg = df_regression(y, 0, 1, options.deterministic);
  const std::size_t bandwidth = options.bandwidth.value_or(newey_west_bandwidth(n));
  const auto& u = reg.residuals;
  const auto m = static_cast<std::size_t>(u.size());
  const double dm = static_cast<double>(m);
  if (bandwidth >= m) throw DataError("PP bandwidth exceeds the sample");

  // Newey-West long-run variance with Bartlett weights.
  const double gamma0 = u.squaredNorm() / dm;
  double lrv = gamma0;
  for (std::size_t j = 1; j <= bandwidth; ++j) {
    double gj = 0.0;
    for (std::size_t t = j; t < m; ++t) gj += u[t] * u[t - j];
    gj /= dm;
    lrv += 2.0 * (1.0 - static_cast<double>(j) / static_cast<double>(bandwidth + 1)) * gj;
  }
  if (!(lrv > 0.0)) throw NumericalError("PP long-run variance estimate is not positive");

  const double s = std::sqrt(reg.sigma2);
  const double se = reg.std_errors[0];
  const double t = reg.t_stats[0];
  const double lam = std::sqrt(lrv);

  UnitRootResult out{};
  out.statistic = std::sqrt(gamma0 / lrv) * t - 0.5 * (lrv - gamma0) / lam * (dm * se / s);
  out.regression_t = t;
  out.p_value = mackinnon_p_value(out.statistic, options.deterministic);
  out.lags_used = bandwidth;
  out.deterministic = options.deterministic;
  out.nobs = m;
  out.critical_values = mackinnon_critical_values(options.deterministic, m);
  return out;
}

UnitRootResult pp_test(const DatedSeries& series, const PpOptions& options) {
  return pp_test(series.values(), options);
}

}  // namespace garchx
