#include "garchx/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <string>

#include "garchx/distributions.hpp"
#include "garchx/error.hpp"
#include "garchx/ols.hpp"

namespace garchx {

namespace {

void require_non_constant(std::span<const double> x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (*lo == *hi) throw DataError("degenerate series: all values equal");
}

TestResult make_result(double statistic, std::size_t lags) {
  const double p = chi2_upper_tail(statistic, static_cast<double>(lags));
  return {statistic, p, lags, p < 0.05 ? Verdict::reject : Verdict::fail_to_reject};
}

}  // namespace

std::vector<double> autocorrelations(std::span<const double> x, std::size_t lags) {
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double denom = 0.0;
  for (double v : x) denom += (v - mean) * (v - mean);
  std::vector<double> rho(lags);
  for (std::size_t k = 1; k <= lags; ++k) {
    double num = 0.0;
    for (std::size_t t = k; t < n; ++t) num += (x[t] - mean) * (x[t - k] - mean);
    rho[k - 1] = num / denom;
  }
  return rho;
}

TestResult ljung_box(std::span<const double> x, std::size_t lags) {
  const std::size_t n = x.size();
  if (lags < 1 || lags >= n) {
    throw std::invalid_argument("ljung_box: need 1 <= lags < n (lags=" + std::to_string(lags) +
                                ", n=" + std::to_string(n) + ")");
  }
  require_non_constant(x);
  const auto rho = autocorrelations(x, lags);
  const double dn = static_cast<double>(n);
  double q = 0.0;
  for (std::size_t k = 1; k <= lags; ++k) {
    q += rho[k - 1] * rho[k - 1] / (dn - static_cast<double>(k));
  }
  return make_result(dn * (dn + 2.0) * q, lags);
}

TestResult arch_lm(std::span<const double> x, std::size_t lags) {
  const std::size_t n = x.size();
  if (lags < 1 || n <= 2 * lags) {
    throw std::invalid_argument("arch_lm: need lags >= 1 and n > 2 lags (lags=" +
                                std::to_string(lags) + ", n=" + std::to_string(n) + ")");
  }
  require_non_constant(x);
  const auto rows = static_cast<Eigen::Index>(n - lags);
  Eigen::MatrixXd design(rows, static_cast<Eigen::Index>(lags + 1));
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t t = static_cast<std::size_t>(r) + lags;
    y[r] = x[t] * x[t];
    design(r, 0) = 1.0;
    for (std::size_t j = 1; j <= lags; ++j) {
      design(r, static_cast<Eigen::Index>(j)) = x[t - j] * x[t - j];
    }
  }
  const auto reg = ols(design, y);
  const double stat = static_cast<double>(rows) * std::clamp(reg.r_squared, 0.0, 1.0);
  return make_result(stat, lags);
}

}  // namespace garchx
