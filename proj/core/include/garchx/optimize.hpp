#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "garchx/numdiff.hpp"

namespace garchx {

struct NelderMeadOptions {
  double f_tol = 1e-8;  ///< max spread of objective values across the simplex
  double x_tol = 1e-6;  ///< max coordinate distance of any vertex from the best
  std::size_t max_iterations = 2000;
  bool restart = true;  ///< rebuild the simplex around the incumbent once
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  std::size_t iterations;
  std::size_t evaluations;
  bool converged;
};

/// Minimizes `f` with the Nelder-Mead downhill simplex. The initial simplex
/// offsets `start` by `steps[i]` along each axis. Non-finite objective values
/// are treated as +infinity.
NelderMeadResult nelder_mead(const Objective& f, std::span<const double> start,
                             std::span<const double> steps,
                             const NelderMeadOptions& options = {});

}  // namespace garchx
