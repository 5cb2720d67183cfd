#pragma once

#include <functional>

namespace kropina {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = true;
};

// Adaptive Simpson with interval bisection and Richardson correction.
// The tolerance is split between halves; recursion stops at max_depth, where
// the result is flagged as not converged.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-12, int max_depth = 40);

}  // namespace kropina
