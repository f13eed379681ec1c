#include "garchx/ols.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "garchx/error.hpp"

namespace garchx {

OlsResult ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
  const auto n = design.rows();
  const auto k = design.cols();
  if (response.size() != n) throw std::invalid_argument("ols: response length != design rows");
  if (k == 0 || n <= k) {
    throw DataError("ols: need more observations (" + std::to_string(n) + ") than regressors (" +
                    std::to_string(k) + ")");
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < k) throw DataError("ols: design matrix is rank deficient");

  OlsResult out;
  out.nobs = static_cast<std::size_t>(n);
  out.nparams = static_cast<std::size_t>(k);
  out.coefficients = qr.solve(response);
  out.residuals = response - design * out.coefficients;
  out.rss = out.residuals.squaredNorm();
  out.sigma2 = out.rss / static_cast<double>(n - k);

  // (X'X)^{-1} = P R^{-1} R^{-T} P^T
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd xtx_inv_perm = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  const Eigen::MatrixXd xtx_inv = perm * xtx_inv_perm * perm.transpose();

  out.std_errors = (out.sigma2 * xtx_inv.diagonal().array()).sqrt();
  out.t_stats.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.t_stats[i] = out.std_errors[i] > 0.0 ? out.coefficients[i] / out.std_errors[i]
                                             : std::numeric_limits<double>::quiet_NaN();
  }

  const double tss = (response.array() - response.mean()).square().sum();
  out.r_squared = tss > 0.0 ? 1.0 - out.rss / tss : 0.0;
  return out;
}

}  // namespace garchx
