#include "garchx/descriptive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "garchx/distributions.hpp"
#include "garchx/error.hpp"

namespace garchx {

JarqueBera jarque_bera(std::size_t n, double skewness, double kurtosis) {
  if (n < 4) throw std::invalid_argument("jarque_bera: need n >= 4");
  const double excess = kurtosis - 3.0;
  const double stat =
      static_cast<double>(n) / 6.0 * (skewness * skewness + excess * excess / 4.0);
  return {stat, chi2_upper_tail(stat, 2.0)};
}

SummaryStats summary_stats(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 4) throw DataError("summary statistics need at least 4 observations");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) throw DataError("degenerate series: all values equal");

  const double dn = static_cast<double>(n);
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / dn;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= dn;
  m3 /= dn;
  m4 /= dn;

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double median =
      n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  SummaryStats s{};
  s.n = n;
  s.mean = std::clamp(mean, *lo, *hi);
  s.median = median;
  s.max = *hi;
  s.min = *lo;
  s.std_dev = std::sqrt(m2 * dn / (dn - 1.0));
  s.skewness = m3 / std::pow(m2, 1.5);
  s.kurtosis = m4 / (m2 * m2);
  const auto jb = jarque_bera(n, s.skewness, s.kurtosis);
  s.jarque_bera = jb.statistic;
  s.jb_p_value = jb.p_value;
  return s;
}

SummaryStats summary_stats(const DatedSeries& series) { return summary_stats(series.values()); }

}  // namespace garchx
