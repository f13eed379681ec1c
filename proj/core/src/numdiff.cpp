#include "garchx/numdiff.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "garchx/error.hpp"

namespace garchx {

namespace {

std::vector<double> step_sizes(std::span<const double> x, StepPolicy steps) {
  std::vector<double> h(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double target = steps.relative * std::max(std::abs(x[i]), steps.min_scale);
    // Use an exactly representable offset so x + h - x == h.
    volatile double moved = x[i] + target;
    h[i] = moved - x[i];
  }
  return h;
}

double checked(const Objective& f, const std::vector<double>& at) {
  const double v = f(at);
  if (!std::isfinite(v)) {
    std::string where;
    for (double a : at) where += (where.empty() ? "" : ", ") + std::to_string(a);
    throw NumericalError("non-finite objective inside finite-difference stencil at (" + where +
                         ")");
  }
  return v;
}

}  // namespace

Eigen::VectorXd numerical_gradient(const Objective& f, std::span<const double> point,
                                   StepPolicy steps) {
  const auto n = point.size();
  const auto h = step_sizes(point, steps);
  std::vector<double> x(point.begin(), point.end());
  Eigen::VectorXd g(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = point[i] + h[i];
    const double up = checked(f, x);
    x[i] = point[i] - h[i];
    const double down = checked(f, x);
    x[i] = point[i];
    g[static_cast<Eigen::Index>(i)] = (up - down) / (2.0 * h[i]);
  }
  return g;
}

Eigen::MatrixXd numerical_hessian(const Objective& f, std::span<const double> point,
                                  StepPolicy steps) {
  const auto n = point.size();
  const auto h = step_sizes(point, steps);
  std::vector<double> x(point.begin(), point.end());
  const double f0 = checked(f, x);

  Eigen::MatrixXd hess(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    x[i] = point[i] + h[i];
    const double up = checked(f, x);
    x[i] = point[i] - h[i];
    const double down = checked(f, x);
    x[i] = point[i];
    hess(ii, ii) = (up - 2.0 * f0 + down) / (h[i] * h[i]);

    for (std::size_t j = 0; j < i; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      auto eval = [&](double si, double sj) {
        x[i] = point[i] + si * h[i];
        x[j] = point[j] + sj * h[j];
        const double v = checked(f, x);
        x[i] = point[i];
        x[j] = point[j];
        return v;
      };
      const double pp = eval(1, 1), pm = eval(1, -1), mp = eval(-1, 1), mm = eval(-1, -1);
      hess(ii, jj) = (pp - pm - mp + mm) / (4.0 * h[i] * h[j]);
      hess(jj, ii) = hess(ii, jj);
    }
  }
  return 0.5 * (hess + hess.transpose());
}

}  // namespace garchx
