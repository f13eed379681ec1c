#pragma once

namespace garchx {

double normal_cdf(double x);

/// P(|Z| > |z|) for standard normal Z.
double two_sided_normal_p(double z);

/// P(X > x) for X ~ chi-squared with `dof` degrees of freedom.
double chi2_upper_tail(double x, double dof);

}  // namespace garchx
