#include "garchx/simulate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace garchx {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kShockStream = 1;
constexpr std::uint64_t kExogStream = 2;

}  // namespace

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream))) {}

double NormalStream::uniform_at(std::uint64_t index) const {
  const std::uint64_t bits = splitmix64(key_ + index * kGolden);
  // 53 random bits mapped to (0, 1].
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_at(counter_++);
  const double u2 = uniform_at(counter_++);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

AlignedDataset Simulation::dataset(std::string label) const {
  return {dates, returns, exog, std::move(label)};
}

Simulation simulate(const SimConfig& config) {
  config.params.validate();
  if (config.length < 1) throw std::invalid_argument("simulate: length must be at least 1");
  if (config.regime) {
    config.regime->params.validate();
    if (config.regime->start_index >= config.length) {
      throw std::invalid_argument("simulate: regime switch index beyond the sample");
    }
  }
  const std::size_t n = config.length;

  Simulation sim;
  sim.exog.resize(n, 0.0);
  if (const auto* normal = std::get_if<ExogNormal>(&config.exog)) {
    NormalStream draws(config.seed, kExogStream);
    for (auto& v : sim.exog) v = normal->mean + normal->sd * draws.next();
  } else if (const auto* supplied = std::get_if<std::vector<double>>(&config.exog)) {
    if (supplied->size() != n) {
      throw std::invalid_argument("simulate: supplied exogenous series length != length");
    }
    sim.exog = *supplied;
  }

  auto params_at = [&](std::size_t t) -> const GarchParams& {
    return config.regime && t >= config.regime->start_index ? config.regime->params
                                                            : config.params;
  };

  NormalStream z(config.seed, kShockStream);
  double h = unconditional_variance(config.params);
  double e = 0.0;
  const GarchParams& p0 = config.params;
  for (std::size_t b = 0; b < config.burn_in; ++b) {
    e = std::sqrt(h) * z.next();
    h = p0.var_intercept + p0.garch * h + p0.arch * e * e;
  }

  sim.dates.resize(n);
  sim.returns.resize(n);
  sim.variance.resize(n);
  sim.shocks.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto& p = params_at(t);
    if (t > 0) h = p.var_intercept + p.garch * h + p.arch * e * e;
    e = std::sqrt(h) * z.next();
    sim.dates[t] = config.start_date + std::chrono::days{static_cast<int>(t)};
    sim.variance[t] = h;
    sim.shocks[t] = e;
    sim.returns[t] = p.mean_intercept + p.exog_coef * sim.exog[t] + e;
  }
  return sim;
}

}  // namespace garchx
