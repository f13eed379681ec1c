#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace garchx {

enum class Verdict { reject, fail_to_reject };

/// Residual test outcome at the 5% level.
struct TestResult {
  double statistic;
  double p_value;
  std::size_t lags;
  Verdict verdict_at_5pct;

  bool rejected() const { return verdict_at_5pct == Verdict::reject; }
};

inline constexpr std::size_t kDefaultLjungBoxLags = 10;
inline constexpr std::size_t kDefaultArchLmLags = 5;

/// Sample autocorrelations rho_1..rho_lags (denominator: full-sample sum of squares).
std::vector<double> autocorrelations(std::span<const double> series, std::size_t lags);

/// Ljung-Box portmanteau test for serial correlation, chi-squared(lags) reference.
TestResult ljung_box(std::span<const double> series, std::size_t lags = kDefaultLjungBoxLags);

/// Engle's LM test: n R^2 from regressing x_t^2 on a constant and `lags` own lags.
TestResult arch_lm(std::span<const double> series, std::size_t lags = kDefaultArchLmLags);

}  // namespace garchx
