#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "garchx/error.hpp"
#include "garchx/garch.hpp"
#include "garchx/numdiff.hpp"
#include "garchx/simulate.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace garchx {
namespace {

oracle::Params as_oracle(const GarchParams& p) {
  return {p.mean_intercept, p.exog_coef, p.var_intercept, p.garch, p.arch};
}

GarchParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double g = 0.05 + 0.85 * u(rng);
  const double a = (0.98 - g) * (0.02 + 0.96 * u(rng));
  return {u(rng) - 0.5, 2.0 * u(rng) - 1.0, 0.05 + u(rng), g, a};
}

TEST(VarianceRecursion, ConstantVarianceCase) {
  const std::vector<double> e{0.3, -2.0, 5.0, 0.0};
  for (double h : variance_recursion({0, 0, 1.0, 0.0, 0.0}, e, 7.0)) EXPECT_EQ(h, 1.0);
}

TEST(VarianceRecursion, HandArithmetic) {
  // h1 = 0.2 + 0.5*1 + 0.3*h0; h2 = 0.2 + 0.5*h1 + 0.3*1^2; h3 = 0.2 + 0.5*h2 + 0.3*2^2
  const auto h = variance_recursion({0, 0, 0.2, 0.5, 0.3}, std::vector<double>{1.0, 2.0, 0.0}, 1.0);
  EXPECT_NEAR(h[0], 1.0, 1e-15);
  EXPECT_NEAR(h[1], 1.0, 1e-15);
  EXPECT_NEAR(h[2], 1.9, 1e-15);
}

TEST(VarianceRecursion, MatchesIndependentLoop) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_params(rng);
    const auto e = testing::normal_draws(300, 100 + trial);
    const double h0 = 0.5 + trial * 0.1;
    const auto h = variance_recursion(p, e, h0);
    const auto ref = oracle::variance_loop(as_oracle(p), e, h0);
    for (std::size_t t = 0; t < h.size(); ++t) {
      EXPECT_NEAR(h[t], ref[t], 1e-12 * ref[t]);
      EXPECT_GT(h[t], 0.0);
    }
  }
}

TEST(VarianceRecursion, InvalidParameters) {
  const std::vector<double> e{1.0};
  EXPECT_THROW(variance_recursion({0, 0, 0.0, 0.5, 0.3}, e, 1.0), std::invalid_argument);
  EXPECT_THROW(variance_recursion({0, 0, 0.1, -0.1, 0.3}, e, 1.0), std::invalid_argument);
  EXPECT_THROW(variance_recursion({0, 0, 0.1, 0.7, 0.3}, e, 1.0), std::invalid_argument);
  EXPECT_THROW(variance_recursion({0, 0, 0.1, 0.5, 0.3}, e, 0.0), std::invalid_argument);
}

TEST(LogLikelihood, StandardNormalAtZero) {
  const std::vector<double> r{0.0}, x{0.0};
  EXPECT_NEAR(log_likelihood({0, 0, 1.0, 0.0, 0.0}, r, x, 3.0), -0.918938533204672742, 1e-15);
}

TEST(LogLikelihood, MatchesPerPointDensities) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_params(rng);
    const auto x = testing::normal_draws(200, 300 + trial);
    auto r = testing::normal_draws(200, 400 + trial);
    for (std::size_t t = 0; t < r.size(); ++t) r[t] += p.exog_coef * x[t];
    const double ll = log_likelihood(p, r, x, 1.3);
    const double ref = oracle::log_likelihood_by_density(as_oracle(p), r, x, 1.3);
    EXPECT_NEAR(ll, ref, 1e-10 * std::abs(ref));
  }
}

TEST(LogLikelihood, RejectsInvalidParameters) {
  const std::vector<double> r{0.1, 0.2}, x{0.0, 1.0};
  EXPECT_THROW(log_likelihood({0, 0, 0.0, 0.5, 0.3}, r, x, 1.0), std::invalid_argument);
}

TEST(LogLikelihood, FiniteDifferenceGradientMatchesAnalytic) {
  const auto sim = simulate({{0.1, 0.5, 0.2, 0.7, 0.2}, 400, 100, 77});
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_params(rng);
    const Objective f = [&](std::span<const double> v) {
      return log_likelihood(GarchParams::from_array(std::span<const double, 5>(v.data(), 5)),
                            sim.returns, sim.exog, 1.1);
    };
    const auto point = p.to_array();
    const auto g = numerical_gradient(f, point);
    const auto ref = oracle::analytic_gradient(as_oracle(p), sim.returns, sim.exog, 1.1);
    const Eigen::Map<const Eigen::Matrix<double, 5, 1>> exact(ref.data());
    EXPECT_LT((g - exact).norm(), 1e-5 * exact.norm());
  }
}

TEST(UnconditionalVariance, Examples) {
  EXPECT_NEAR(unconditional_variance({0, 0, 0.2, 0.5, 0.3}), 1.0, 1e-15);
  EXPECT_EQ(unconditional_variance({0, 0, 1.0, 0.0, 0.0}), 1.0);
  // BDT/USD variance equation estimates; 30-digit reference 1.15240083507e-10.
  EXPECT_NEAR(unconditional_variance({0, 0, 2.76e-11, 0.4910, 0.2695}), 1.15240083507e-10,
              1e-20);
  EXPECT_THROW(unconditional_variance({0, 0, 0.1, 0.6, 0.4}), std::invalid_argument);
}

TEST(Reparameterization, RoundTrip) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_params(rng);
    const auto theta = to_unconstrained(p);
    const auto q = from_unconstrained(theta);
    const auto a = p.to_array(), b = q.to_array();
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(a[i], b[i], 1e-10 * std::max(1.0, std::abs(a[i])));
  }
}

TEST(Reparameterization, ImageStaysStationary) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> wide(0.0, 20.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::array<double, 5> theta{wide(rng), wide(rng), wide(rng) / 5, wide(rng), wide(rng)};
    const auto p = from_unconstrained(theta);
    EXPECT_GT(p.var_intercept, 0.0);
    EXPECT_GE(p.garch, 0.0);
    EXPECT_GE(p.arch, 0.0);
    EXPECT_LT(p.persistence(), 1.0);
  }
}

class FitOnSimulated : public ::testing::Test {
 protected:
  static constexpr GarchParams kTruth{0.0, 0.5, 0.1, 0.8, 0.1};
  static void SetUpTestSuite() {
    data_ = new AlignedDataset(simulate({kTruth, 5000, 500, 2024}).dataset());
    fit_ = new GarchFit(fit(*data_));
  }
  static void TearDownTestSuite() {
    delete fit_;
    delete data_;
  }
  static inline AlignedDataset* data_ = nullptr;
  static inline GarchFit* fit_ = nullptr;
};

TEST_F(FitOnSimulated, RecoversParameters) {
  ASSERT_TRUE(fit_->converged);
  const auto truth = kTruth.to_array();
  const auto est = fit_->params.to_array();
  for (int i = 0; i < 5; ++i) {
    EXPECT_LT(std::abs(est[i] - truth[i]), 3.0 * fit_->std_errors[i]) << kParamNames[i];
  }
  EXPECT_NEAR(fit_->params.garch, 0.8, 0.05);
  EXPECT_NEAR(fit_->params.arch, 0.1, 0.05);
  EXPECT_LT(fit_->params.persistence(), 1.0);
}

TEST_F(FitOnSimulated, InferenceAndPathInvariants) {
  const auto est = fit_->params.to_array();
  for (int i = 0; i < 5; ++i) {
    EXPECT_GT(fit_->std_errors[i], 0.0);
    EXPECT_DOUBLE_EQ(fit_->z_stats[i], est[i] / fit_->std_errors[i]);
    EXPECT_GE(fit_->p_values[i], 0.0);
    EXPECT_LE(fit_->p_values[i], 1.0);
  }
  EXPECT_GE(fit_->log_likelihood, fit_->start_log_likelihood);

  const auto h = variance_recursion(fit_->params, fit_->residuals.values(), fit_->h0);
  for (std::size_t t = 0; t < h.size(); ++t) {
    EXPECT_NEAR(h[t], fit_->cond_variance.value(t), 1e-10 * h[t]);
    EXPECT_EQ(fit_->cond_variance.date(t), data_->dates()[t]);
  }

  double ss = 0.0, mean = 0.0;
  const auto z = fit_->std_residuals.values();
  for (double v : z) mean += v / static_cast<double>(z.size());
  for (double v : z) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(z.size() - 1);
  EXPECT_GE(var, 0.9);
  EXPECT_LE(var, 1.1);
}

TEST_F(FitOnSimulated, InvariantToRegressorShift) {
  constexpr double shift = 37.5;
  std::vector<double> x(data_->exog().begin(), data_->exog().end());
  for (auto& v : x) v += shift;
  const AlignedDataset shifted({data_->dates().begin(), data_->dates().end()},
                               {data_->returns().begin(), data_->returns().end()}, x);
  const auto g = fit(shifted);
  const auto& p = fit_->params;
  EXPECT_NEAR(g.params.mean_intercept, p.mean_intercept - p.exog_coef * shift,
              1e-4 * std::abs(p.exog_coef * shift));
  EXPECT_NEAR(g.params.exog_coef, p.exog_coef, 1e-4 * std::abs(p.exog_coef));
  EXPECT_NEAR(g.params.var_intercept, p.var_intercept, 1e-4 * p.var_intercept);
  EXPECT_NEAR(g.params.garch, p.garch, 1e-4 * p.garch);
  EXPECT_NEAR(g.params.arch, p.arch, 1e-4 * p.arch);
}

TEST(Fit, TinyScaleReturns) {
  // Exchange-rate returns are O(1e-4); the fit must not depend on units.
  const auto sim = simulate({{0.0, 0.5, 0.1, 0.8, 0.1}, 3000, 500, 31});
  std::vector<double> r = sim.returns, x = sim.exog;
  for (auto& v : r) v *= 1e-4;
  for (auto& v : x) v *= 250.0;
  const auto big = fit(sim.dataset());
  const auto small = fit(AlignedDataset(sim.dates, r, x));
  EXPECT_NEAR(small.params.exog_coef, big.params.exog_coef * 1e-4 / 250.0,
              1e-4 * std::abs(big.params.exog_coef * 1e-4 / 250.0));
  EXPECT_NEAR(small.params.var_intercept, big.params.var_intercept * 1e-8,
              1e-4 * big.params.var_intercept * 1e-8);
  EXPECT_NEAR(small.params.garch, big.params.garch, 1e-4);
  EXPECT_NEAR(small.std_errors[3], big.std_errors[3], 1e-3 * big.std_errors[3]);
}

TEST(Fit, DegenerateData) {
  const auto dates = testing::days(100);
  const auto x = testing::normal_draws(100, 1);
  EXPECT_THROW(fit(AlignedDataset(dates, std::vector<double>(100, 0.01), x)), DataError);
  EXPECT_THROW(fit(AlignedDataset(dates, x, std::vector<double>(100, 2.0))), DataError);
}

TEST(Fit, IterationCapFlagsNonConvergence) {
  const auto sim = simulate({{0.0, 0.5, 0.1, 0.8, 0.1}, 500, 100, 3});
  FitOptions options;
  options.optimizer.max_iterations = 5;
  const auto f = fit(sim.dataset(), options);
  EXPECT_FALSE(f.converged);
  EXPECT_FALSE(f.warnings.empty());
  EXPECT_GE(f.log_likelihood, f.start_log_likelihood);
}

TEST(Params, BdtUsdPersistenceIsStationary) {
  const GarchParams usd{7.43e-07, 5.86e-09, 2.76e-11, 0.4910, 0.2695};
  EXPECT_NO_THROW(usd.validate());
  EXPECT_NEAR(usd.persistence(), 0.7605, 1e-12);
  EXPECT_LT(usd.persistence(), 1.0);
}

}  // namespace
}  // namespace garchx
