#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sharpineq {

struct NelderMeadOptions {
  double initial_step = 0.25;   ///< simplex edge, per coordinate
  double x_tol = 1e-8;          ///< simplex diameter at which a run stops
  double f_tol = 1e-11;         ///< relative spread of vertex values at which a run stops
  int max_evaluations = 2000;
  int max_restarts = 8;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  int restarts = 0;
  bool converged = false; ///< false when the evaluation budget ran out
};

/// Derivative-free simplex minimization inside the box [lower, upper]
/// (trial points are clamped to the box). Restarts from the best vertex
/// until a restart no longer improves the value.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             std::span<const double> lower, std::span<const double> upper,
                             const NelderMeadOptions& opts = {});

} // namespace sharpineq
