#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

namespace garchx {

using Objective = std::function<double(std::span<const double>)>;

/// Per-coordinate step h_i = relative * max(|x_i|, min_scale).
struct StepPolicy {
  double relative;
  double min_scale;

  static constexpr StepPolicy gradient() { return {6.0e-6, 1.0e-2}; }
  static constexpr StepPolicy hessian() { return {1.0e-4, 1.0e-2}; }
};

/// Central-difference gradient. Throws NumericalError on a non-finite evaluation.
Eigen::VectorXd numerical_gradient(const Objective& f, std::span<const double> point,
                                   StepPolicy steps = StepPolicy::gradient());

/// Central second differences, symmetrized as (H + H^T) / 2. Throws
/// NumericalError when any evaluation inside the stencil is non-finite.
Eigen::MatrixXd numerical_hessian(const Objective& f, std::span<const double> point,
                                  StepPolicy steps = StepPolicy::hessian());

}  // namespace garchx
