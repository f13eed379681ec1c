#include "garchx/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace garchx {

namespace {

struct Simplex {
  std::vector<std::vector<double>> vertices;
  std::vector<double> values;
};

struct RunResult {
  std::size_t iterations = 0;
  bool converged = false;
};

class Minimizer {
 public:
  Minimizer(const Objective& f, const NelderMeadOptions& options) : f_(f), options_(options) {}

  double eval(const std::vector<double>& x) {
    ++evaluations_;
    const double v = f_(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }

  Simplex build(std::span<const double> start, std::span<const double> steps) {
    const std::size_t n = start.size();
    Simplex s;
    s.vertices.assign(n + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < n; ++i) s.vertices[i + 1][i] += steps[i];
    for (const auto& v : s.vertices) s.values.push_back(eval(v));
    return s;
  }

  bool done(const Simplex& s, const std::vector<std::size_t>& order) const {
    const double best = s.values[order.front()];
    const double worst = s.values[order.back()];
    if (!(worst - best <= options_.f_tol)) return false;
    const auto& xb = s.vertices[order.front()];
    for (const auto& v : s.vertices) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i] - xb[i]) > options_.x_tol) return false;
      }
    }
    return true;
  }

  RunResult run(Simplex& s) {
    const std::size_t n = s.vertices.size() - 1;
    std::vector<std::size_t> order(n + 1);
    RunResult out;
    std::vector<double> centroid(n), trial(n), trial2(n);

    auto point_along = [&](double coef, std::vector<double>& dst, std::size_t worst) {
      for (std::size_t i = 0; i < n; ++i) {
        dst[i] = centroid[i] + coef * (s.vertices[worst][i] - centroid[i]);
      }
    };

    while (true) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
      if (done(s, order)) {
        out.converged = true;
        return out;
      }
      if (out.iterations >= options_.max_iterations) return out;
      ++out.iterations;

      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second_worst = order[n - 1];

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        const auto& v = s.vertices[order[k]];
        for (std::size_t i = 0; i < n; ++i) centroid[i] += v[i];
      }
      for (double& c : centroid) c /= static_cast<double>(n);

      point_along(-1.0, trial, worst);  // reflection
      const double fr = eval(trial);
      if (fr < s.values[best]) {
        point_along(-2.0, trial2, worst);  // expansion
        const double fe = eval(trial2);
        if (fe < fr) {
          s.vertices[worst] = trial2;
          s.values[worst] = fe;
        } else {
          s.vertices[worst] = trial;
          s.values[worst] = fr;
        }
        continue;
      }
      if (fr < s.values[second_worst]) {
        s.vertices[worst] = trial;
        s.values[worst] = fr;
        continue;
      }
      // Contraction: outside if the reflected point beats the worst, else inside.
      const bool outside = fr < s.values[worst];
      point_along(outside ? -0.5 : 0.5, trial2, worst);
      const double fc = eval(trial2);
      if (fc < (outside ? fr : s.values[worst])) {
        s.vertices[worst] = trial2;
        s.values[worst] = fc;
        continue;
      }
      // Shrink towards the best vertex.
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == best) continue;
        for (std::size_t i = 0; i < n; ++i) {
          s.vertices[k][i] = s.vertices[best][i] + 0.5 * (s.vertices[k][i] - s.vertices[best][i]);
        }
        s.values[k] = eval(s.vertices[k]);
      }
    }
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const Objective& f_;
  const NelderMeadOptions& options_;
  std::size_t evaluations_ = 0;
};

std::size_t best_index(const Simplex& s) {
  return static_cast<std::size_t>(
      std::min_element(s.values.begin(), s.values.end()) - s.values.begin());
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::span<const double> start,
                             std::span<const double> steps, const NelderMeadOptions& options) {
  if (start.empty() || steps.size() != start.size()) {
    throw std::invalid_argument("nelder_mead: start and steps must be non-empty and equal length");
  }
  Minimizer minimizer(f, options);
  Simplex simplex = minimizer.build(start, steps);
  auto run = minimizer.run(simplex);
  std::size_t iterations = run.iterations;

  if (options.restart) {
    const auto incumbent = simplex.vertices[best_index(simplex)];
    simplex = minimizer.build(incumbent, steps);
    run = minimizer.run(simplex);
    iterations += run.iterations;
  }

  const auto b = best_index(simplex);
  return {simplex.vertices[b], simplex.values[b], iterations, minimizer.evaluations(),
          run.converged};
}

}  // namespace garchx
