#pragma once

#include <cstddef>
#include <span>

#include "garchx/timeseries.hpp"

namespace garchx {

struct JarqueBera {
  double statistic;
  double p_value;
};

/// Summary statistics in the usual econometrics-package layout.
///
/// Skewness and kurtosis use biased (1/n) central moments; the standard
/// deviation uses the n-1 denominator. Kurtosis is raw (3 for a Gaussian).
struct SummaryStats {
  std::size_t n;
  double mean;
  double median;
  double max;
  double min;
  double std_dev;
  double skewness;
  double kurtosis;
  double jarque_bera;
  double jb_p_value;
};

SummaryStats summary_stats(std::span<const double> values);
SummaryStats summary_stats(const DatedSeries& series);

/// JB = n/6 * (S^2 + (K-3)^2/4), asymptotically chi-squared(2).
JarqueBera jarque_bera(std::size_t n, double skewness, double kurtosis);

}  // namespace garchx
