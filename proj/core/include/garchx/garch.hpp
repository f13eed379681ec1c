#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "garchx/optimize.hpp"
#include "garchx/timeseries.hpp"

namespace garchx {

/// GARCH(1,1) with one exogenous regressor in the mean:
///
///   r_t = mean_intercept + exog_coef * x_t + e_t
///   h_t = var_intercept + garch * h_{t-1} + arch * e_{t-1}^2
struct GarchParams {
  double mean_intercept = 0.0;
  double exog_coef = 0.0;
  double var_intercept = 1.0;
  double garch = 0.0;
  double arch = 0.0;

  double persistence() const { return garch + arch; }

  /// Throws std::invalid_argument unless var_intercept > 0, garch >= 0,
  /// arch >= 0 and garch + arch < 1.
  void validate() const;

  std::array<double, 5> to_array() const {
    return {mean_intercept, exog_coef, var_intercept, garch, arch};
  }
  static GarchParams from_array(std::span<const double, 5> v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }
};

inline constexpr std::array<const char*, 5> kParamNames{"mean_intercept", "exog_coef",
                                                        "var_intercept", "garch", "arch"};

/// Upper bound on garch + arch enforced by the fitting reparameterization.
inline constexpr double kPersistenceCeiling = 1.0 - 1e-6;

/// Conditional variances h_1..h_n for residuals e_1..e_n. The pre-sample
/// squared residual is seeded with h0, so h_1 = var_intercept + (garch + arch) h0.
std::vector<double> variance_recursion(const GarchParams& params,
                                       std::span<const double> residuals, double h0);

/// e_t = r_t - mean_intercept - exog_coef * x_t
std::vector<double> mean_residuals(const GarchParams& params, std::span<const double> returns,
                                   std::span<const double> exog);

/// Mean squared mean-equation residual at `params`; the initial variance used
/// throughout estimation.
double initial_variance(const GarchParams& params, std::span<const double> returns,
                        std::span<const double> exog);

/// Starting values: sample mean, zero exogenous effect, 0.1 Var(r), 0.8, 0.1.
GarchParams default_start(std::span<const double> returns);

/// Gaussian log-likelihood over any number of observations (>= 1).
double log_likelihood(const GarchParams& params, std::span<const double> returns,
                      std::span<const double> exog, double h0);

/// Gaussian log-likelihood with h0 from initial_variance at the default start.
double log_likelihood(const GarchParams& params, const AlignedDataset& data);

double unconditional_variance(const GarchParams& params);

/// Maps parameters to R^5: log variance intercept and a multinomial-logit
/// pair for (garch, arch) with garch + arch < kPersistenceCeiling. garch and
/// arch must be strictly positive.
std::array<double, 5> to_unconstrained(const GarchParams& params);
GarchParams from_unconstrained(std::span<const double, 5> theta);

struct FitOptions {
  NelderMeadOptions optimizer{};
  std::optional<GarchParams> start;
};

struct GarchFit {
  GarchParams params;
  std::array<double, 5> std_errors;
  std::array<double, 5> z_stats;
  std::array<double, 5> p_values;
  double log_likelihood;
  double start_log_likelihood;
  DatedSeries cond_variance;
  DatedSeries residuals;
  DatedSeries std_residuals;
  bool converged;
  std::size_t iterations;
  double h0;
  std::vector<std::string> warnings;

  std::size_t nobs() const { return residuals.size(); }
};

/// Maximum-likelihood fit by Nelder-Mead over the unconstrained
/// parameterization. Returns converged = false (with a warning) rather than
/// throwing when the simplex does not meet its tolerances. Throws DataError
/// on constant returns or a constant regressor.
GarchFit fit(const AlignedDataset& data, const FitOptions& options = {});

}  // namespace garchx
