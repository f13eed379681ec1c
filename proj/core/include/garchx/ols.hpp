#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace garchx {

struct OlsResult {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;
  Eigen::VectorXd t_stats;
  Eigen::VectorXd residuals;
  double rss = 0.0;
  double sigma2 = 0.0;     ///< rss / (nobs - nparams)
  double r_squared = 0.0;  ///< 1 - rss / centered total sum of squares
  std::size_t nobs = 0;
  std::size_t nparams = 0;
};

/// Least squares via column-pivoted Householder QR.
///
/// Throws DataError when the design is rank deficient (a pivot falls below
/// 1e-10 relative to the largest) or has no residual degrees of freedom.
OlsResult ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

}  // namespace garchx
