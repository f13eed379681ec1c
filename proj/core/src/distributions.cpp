#include "garchx/distributions.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace garchx {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double two_sided_normal_p(double z) { return std::erfc(std::abs(z) / std::numbers::sqrt2); }

double chi2_upper_tail(double x, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("chi2_upper_tail: dof must be positive");
  if (std::isnan(x)) return x;
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

}  // namespace garchx
