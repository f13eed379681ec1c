#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "garchx/error.hpp"
#include "garchx/numdiff.hpp"
#include "garchx/optimize.hpp"

namespace garchx {
namespace {

TEST(NumericalHessian, Quadratic) {
  const Objective f = [](std::span<const double> v) { return v[0] * v[0]; };
  for (double x : {-3.0, 0.0, 1e-3, 2.5, 1e4}) {
    const std::vector<double> p{x};
    EXPECT_NEAR(numerical_hessian(f, p)(0, 0), 2.0, 1e-6) << "at " << x;
  }
}

TEST(NumericalHessian, Bilinear) {
  const Objective f = [](std::span<const double> v) { return v[0] * v[1]; };
  const std::vector<double> p{0.7, -1.3};
  const auto h = numerical_hessian(f, p);
  EXPECT_NEAR(h(0, 1), 1.0, 1e-6);
  EXPECT_NEAR(h(1, 0), 1.0, 1e-6);
  EXPECT_NEAR(h(0, 0), 0.0, 1e-6);
  EXPECT_NEAR(h(1, 1), 0.0, 1e-6);
}

TEST(NumericalHessian, QuarticMatchesAnalytic) {
  // f = x^4 + x^2 y^2 + 3 y z^3 + z^4 - x y z
  const Objective f = [](std::span<const double> v) {
    const double x = v[0], y = v[1], z = v[2];
    return std::pow(x, 4) + x * x * y * y + 3 * y * std::pow(z, 3) + std::pow(z, 4) - x * y * z;
  };
  const std::vector<std::array<double, 3>> points{{1.0, 2.0, -0.5}, {-0.3, 0.8, 1.7},
                                                  {2.2, -1.1, 0.9}};
  for (const auto& p : points) {
    const double x = p[0], y = p[1], z = p[2];
    Eigen::Matrix3d exact;
    exact << 12 * x * x + 2 * y * y, 4 * x * y - z, -y,  //
        4 * x * y - z, 2 * x * x, 9 * z * z - x,         //
        -y, 9 * z * z - x, 18 * y * z + 12 * z * z;
    const auto h = numerical_hessian(f, p);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(h(i, j), exact(i, j), 1e-4 * std::max(1.0, std::abs(exact(i, j))));
      }
    }
    EXPECT_EQ(h(0, 2), h(2, 0));
  }
}

TEST(NumericalHessian, NonFiniteStencilThrows) {
  const Objective f = [](std::span<const double> v) { return std::log(v[0]); };
  const std::vector<double> p{0.0};
  EXPECT_THROW(numerical_hessian(f, p), NumericalError);
}

TEST(NumericalGradient, MatchesAnalytic) {
  const Objective f = [](std::span<const double> v) {
    return std::sin(v[0]) * std::exp(v[1]) + v[0] * v[0] * v[1];
  };
  const std::vector<double> p{0.4, -0.7};
  const auto g = numerical_gradient(f, p);
  EXPECT_NEAR(g[0], std::cos(0.4) * std::exp(-0.7) + 2 * 0.4 * -0.7, 1e-9);
  EXPECT_NEAR(g[1], std::sin(0.4) * std::exp(-0.7) + 0.16, 1e-9);
}

TEST(NelderMead, Rosenbrock) {
  const Objective f = [](std::span<const double> v) {
    return 100 * std::pow(v[1] - v[0] * v[0], 2) + std::pow(1 - v[0], 2);
  };
  const std::vector<double> start{-1.2, 1.0}, steps{0.5, 0.5};
  NelderMeadOptions options;
  options.f_tol = 1e-14;
  options.x_tol = 1e-8;
  options.max_iterations = 5000;
  const auto r = nelder_mead(f, start, steps, options);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
  EXPECT_LE(r.value, f(start));
}

TEST(NelderMead, InfeasibleRegionTreatedAsInfinite) {
  // Minimum of (x - 2)^2 subject to x > 1, expressed by returning NaN outside.
  const Objective f = [](std::span<const double> v) {
    return v[0] > 1.0 ? (v[0] - 2) * (v[0] - 2) : std::numeric_limits<double>::quiet_NaN();
  };
  const std::vector<double> start{1.5}, steps{1.0};
  const auto r = nelder_mead(f, start, steps);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 2.0, 1e-4);
}

TEST(NelderMead, IterationCapReportsNonConvergence) {
  const Objective f = [](std::span<const double> v) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i + 1.0) * v[i] * v[i];
    return s;
  };
  const std::vector<double> start(5, 3.0), steps(5, 0.1);
  NelderMeadOptions options;
  options.max_iterations = 10;
  const auto r = nelder_mead(f, start, steps, options);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 20u);  // 10 + 10 after the restart
  EXPECT_LT(r.value, f(start));
}

}  // namespace
}  // namespace garchx
