#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "garchx/date.hpp"
#include "garchx/garch.hpp"
#include "garchx/timeseries.hpp"

namespace garchx {

/// Reproducible standard normal draws: SplitMix64 evaluated at successive
/// counters of a (seed, stream) key, paired through Box-Muller. Output depends
/// only on the key and the draw index.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed, std::uint64_t stream = 0);

  double next();
  /// Uniform on (0, 1] at counter position `index`.
  double uniform_at(std::uint64_t index) const;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct ExogZeros {};
struct ExogNormal {
  double mean = 0.0;
  double sd = 1.0;
};
using ExogSpec = std::variant<ExogZeros, ExogNormal, std::vector<double>>;

/// Parameters in force from `start_index` (0-based, after burn-in) onwards.
struct RegimeSwitch {
  std::size_t start_index;
  GarchParams params;
};

struct SimConfig {
  GarchParams params;
  std::size_t length = 1000;
  std::size_t burn_in = 500;
  std::uint64_t seed = 0;
  ExogSpec exog = ExogNormal{};
  Date start_date = Date{std::chrono::year{2020} / 1 / 1};
  std::optional<RegimeSwitch> regime;
};

/// Simulated sample on consecutive calendar days.
struct Simulation {
  std::vector<Date> dates;
  std::vector<double> returns;
  std::vector<double> exog;
  std::vector<double> variance;  ///< true conditional variance h_t
  std::vector<double> shocks;    ///< e_t = sqrt(h_t) z_t

  /// Throws DataError when shorter than kMinObservations.
  AlignedDataset dataset(std::string label = "simulated") const;
};

/// h starts at the unconditional variance, burn-in draws are discarded, and
/// identical configs give bit-identical output.
Simulation simulate(const SimConfig& config);

}  // namespace garchx
