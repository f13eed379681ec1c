#include "garchx/garch.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "garchx/distributions.hpp"
#include "garchx/error.hpp"
#include "garchx/numdiff.hpp"

namespace garchx {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2 pi)
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_same_length(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("returns and exog differ in length");
}

// Log-likelihood without parameter checks; NaN when a variance turns
// non-positive. Used inside finite-difference stencils.
double log_likelihood_unchecked(const GarchParams& p, std::span<const double> r,
                                std::span<const double> x, double h0) {
  double ll = 0.0;
  double h_prev = h0;
  double e2_prev = h0;
  for (std::size_t t = 0; t < r.size(); ++t) {
    const double h = p.var_intercept + p.garch * h_prev + p.arch * e2_prev;
    if (!(h > 0.0)) return kNaN;
    const double e = r[t] - p.mean_intercept - p.exog_coef * x[t];
    ll -= 0.5 * (kLog2Pi + std::log(h) + e * e / h);
    h_prev = h;
    e2_prev = e * e;
  }
  return ll;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double a : v) s += a;
  return s / static_cast<double>(v.size());
}

// Population standard deviation.
double spread_of(std::span<const double> v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double a : v) s += (a - m) * (a - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
}

// Affine change of units between the caller's data and the standardized
// problem the optimizer sees: r~ = r / sr, x~ = (x - mx) / sx.
struct Scaling {
  double sr;
  double mx;
  double sx;

  GarchParams to_scaled(const GarchParams& p) const {
    return {(p.mean_intercept + p.exog_coef * mx) / sr, p.exog_coef * sx / sr,
            p.var_intercept / (sr * sr), p.garch, p.arch};
  }
  GarchParams to_original(const GarchParams& q) const {
    const double exog = q.exog_coef * sr / sx;
    return {sr * q.mean_intercept - exog * mx, exog, q.var_intercept * sr * sr, q.garch, q.arch};
  }
  // d(original) / d(scaled)
  Eigen::Matrix<double, 5, 5> jacobian() const {
    Eigen::Matrix<double, 5, 5> j = Eigen::Matrix<double, 5, 5>::Identity();
    j(0, 0) = sr;
    j(0, 1) = -mx * sr / sx;
    j(1, 1) = sr / sx;
    j(2, 2) = sr * sr;
    return j;
  }
};

}  // namespace

void GarchParams::validate() const {
  if (!std::isfinite(mean_intercept) || !std::isfinite(exog_coef)) {
    throw std::invalid_argument("mean-equation parameters must be finite");
  }
  if (!(var_intercept > 0.0) || !std::isfinite(var_intercept)) {
    throw std::invalid_argument("variance intercept must be positive");
  }
  if (!(garch >= 0.0) || !(arch >= 0.0)) {
    throw std::invalid_argument("GARCH and ARCH coefficients must be non-negative");
  }
  if (!(garch + arch < 1.0)) {
    throw std::invalid_argument("non-stationary: GARCH + ARCH coefficients must sum below 1");
  }
}

std::vector<double> variance_recursion(const GarchParams& params,
                                       std::span<const double> residuals, double h0) {
  params.validate();
  if (!(h0 > 0.0)) throw std::invalid_argument("initial variance must be positive");
  if (residuals.empty()) throw std::invalid_argument("variance_recursion: no residuals");
  std::vector<double> h(residuals.size());
  double h_prev = h0;
  double e2_prev = h0;
  for (std::size_t t = 0; t < residuals.size(); ++t) {
    h[t] = params.var_intercept + params.garch * h_prev + params.arch * e2_prev;
    h_prev = h[t];
    e2_prev = residuals[t] * residuals[t];
  }
  return h;
}

std::vector<double> mean_residuals(const GarchParams& params, std::span<const double> returns,
                                   std::span<const double> exog) {
  require_same_length(returns, exog);
  std::vector<double> e(returns.size());
  for (std::size_t t = 0; t < returns.size(); ++t) {
    e[t] = returns[t] - params.mean_intercept - params.exog_coef * exog[t];
  }
  return e;
}

double initial_variance(const GarchParams& params, std::span<const double> returns,
                        std::span<const double> exog) {
  const auto e = mean_residuals(params, returns, exog);
  if (e.empty()) throw std::invalid_argument("initial_variance: no observations");
  double s = 0.0;
  for (double v : e) s += v * v;
  return s / static_cast<double>(e.size());
}

GarchParams default_start(std::span<const double> returns) {
  const double sd = spread_of(returns);
  return {mean_of(returns), 0.0, 0.1 * sd * sd, 0.8, 0.1};
}

double log_likelihood(const GarchParams& params, std::span<const double> returns,
                      std::span<const double> exog, double h0) {
  params.validate();
  require_same_length(returns, exog);
  if (returns.empty()) throw std::invalid_argument("log_likelihood: no observations");
  if (!(h0 > 0.0)) throw std::invalid_argument("initial variance must be positive");
  double ll = 0.0;
  double h_prev = h0;
  double e2_prev = h0;
  for (std::size_t t = 0; t < returns.size(); ++t) {
    const double h = params.var_intercept + params.garch * h_prev + params.arch * e2_prev;
    const double e = returns[t] - params.mean_intercept - params.exog_coef * exog[t];
    const double term = kLog2Pi + std::log(h) + e * e / h;
    if (!std::isfinite(term)) {
      throw NumericalError("non-finite log-likelihood term at observation " + std::to_string(t));
    }
    ll -= 0.5 * term;
    h_prev = h;
    e2_prev = e * e;
  }
  return ll;
}

double log_likelihood(const GarchParams& params, const AlignedDataset& data) {
  const double h0 = initial_variance(default_start(data.returns()), data.returns(), data.exog());
  return log_likelihood(params, data.returns(), data.exog(), h0);
}

double unconditional_variance(const GarchParams& params) {
  params.validate();
  return params.var_intercept / (1.0 - params.garch - params.arch);
}

std::array<double, 5> to_unconstrained(const GarchParams& params) {
  params.validate();
  const double rest = kPersistenceCeiling - params.garch - params.arch;
  if (!(params.garch > 0.0) || !(params.arch > 0.0) || !(rest > 0.0)) {
    throw std::invalid_argument(
        "to_unconstrained: GARCH and ARCH must be positive with room below the ceiling");
  }
  return {params.mean_intercept, params.exog_coef, std::log(params.var_intercept),
          std::log(params.garch / rest), std::log(params.arch / rest)};
}

GarchParams from_unconstrained(std::span<const double, 5> theta) {
  const double top = std::max({0.0, theta[3], theta[4]});
  const double w0 = std::exp(-top);
  const double w1 = std::exp(theta[3] - top);
  const double w2 = std::exp(theta[4] - top);
  const double denom = w0 + w1 + w2;
  return {theta[0], theta[1], std::exp(theta[2]), kPersistenceCeiling * w1 / denom,
          kPersistenceCeiling * w2 / denom};
}

GarchFit fit(const AlignedDataset& data, const FitOptions& options) {
  const auto r = data.returns();
  const auto x = data.exog();
  const std::size_t n = data.size();

  const double sr = spread_of(r);
  const double sx = spread_of(x);
  if (is_constant(r) || !(sr > 0.0)) throw DataError(data.label() + ": returns are constant");
  if (is_constant(x) || !(sx > 0.0)) {
    throw DataError(data.label() +
                    ": exogenous regressor is constant; its coefficient is not identified");
  }
  const Scaling scale{sr, mean_of(x), sx};

  std::vector<double> rs(n), xs(n);
  for (std::size_t t = 0; t < n; ++t) {
    rs[t] = r[t] / scale.sr;
    xs[t] = (x[t] - scale.mx) / scale.sx;
  }

  const GarchParams start = options.start.value_or(default_start(r));
  start.validate();
  const GarchParams start_scaled = scale.to_scaled(start);
  const double h0_scaled = initial_variance(start_scaled, rs, xs);
  const double h0 = h0_scaled * scale.sr * scale.sr;

  const Objective objective = [&](std::span<const double> theta) {
    const auto p = from_unconstrained(std::span<const double, 5>(theta.data(), 5));
    return -log_likelihood_unchecked(p, rs, xs, h0_scaled) / static_cast<double>(n);
  };

  const auto theta0 = to_unconstrained(start_scaled);
  constexpr std::array<double, 5> steps{0.1, 0.1, 0.5, 0.5, 0.5};
  const auto opt = nelder_mead(objective, theta0, steps, options.optimizer);
  const GarchParams best_scaled =
      from_unconstrained(std::span<const double, 5>(opt.x.data(), 5));

  std::vector<std::string> warnings;
  if (!opt.converged) {
    warnings.push_back("optimizer did not meet its tolerances after " +
                       std::to_string(opt.iterations) + " iterations");
  }

  // Observed information in the natural (scaled) parameters, mapped back to
  // the caller's units through the linear change of scale.
  std::array<double, 5> se{kNaN, kNaN, kNaN, kNaN, kNaN};
  const Objective loglik = [&](std::span<const double> v) {
    return log_likelihood_unchecked(GarchParams::from_array(std::span<const double, 5>(v.data(), 5)),
                                    rs, xs, h0_scaled);
  };
  const auto point = best_scaled.to_array();
  std::optional<Eigen::MatrixXd> hessian;
  StepPolicy hsteps = StepPolicy::hessian();
  for (int attempt = 0; attempt < 3 && !hessian; ++attempt) {
    try {
      hessian = numerical_hessian(loglik, point, hsteps);
    } catch (const NumericalError&) {
      hsteps.relative *= 0.1;
    }
  }
  if (!hessian) {
    warnings.push_back("Hessian could not be evaluated; standard errors unavailable");
  } else {
    const Eigen::Matrix<double, 5, 5> info = -*hessian;
    Eigen::FullPivLU<Eigen::Matrix<double, 5, 5>> lu(info);
    if (!lu.isInvertible()) {
      warnings.push_back("information matrix is singular; standard errors unavailable");
    } else {
      const auto j = scale.jacobian();
      const Eigen::Matrix<double, 5, 5> cov = j * lu.inverse() * j.transpose();
      bool all_ok = true;
      for (int i = 0; i < 5; ++i) {
        if (cov(i, i) > 0.0) {
          se[static_cast<std::size_t>(i)] = std::sqrt(cov(i, i));
        } else {
          all_ok = false;
        }
      }
      if (!all_ok) {
        warnings.push_back("information matrix is not positive definite at the optimum");
      }
    }
  }

  const GarchParams params = scale.to_original(best_scaled);
  const auto resid = mean_residuals(params, r, x);
  const auto h = variance_recursion(params, resid, h0);
  std::vector<double> z(n);
  for (std::size_t t = 0; t < n; ++t) z[t] = resid[t] / std::sqrt(h[t]);

  const auto values = params.to_array();
  std::array<double, 5> zs{}, ps{};
  for (std::size_t i = 0; i < 5; ++i) {
    zs[i] = values[i] / se[i];
    ps[i] = std::isfinite(zs[i]) ? two_sided_normal_p(zs[i]) : kNaN;
  }

  const std::vector<Date> dates(data.dates().begin(), data.dates().end());
  return GarchFit{params,
                  se,
                  zs,
                  ps,
                  log_likelihood(params, r, x, h0),
                  log_likelihood(start, r, x, h0),
                  DatedSeries(dates, h, data.label()),
                  DatedSeries(dates, resid, data.label()),
                  DatedSeries(dates, std::move(z), data.label()),
                  opt.converged,
                  opt.iterations,
                  h0,
                  std::move(warnings)};
}

}  // namespace garchx
