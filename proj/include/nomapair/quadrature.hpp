#pragma once

#include <functional>

namespace nomapair {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // accumulated estimate, not a hard bound
  long evals = 0;
};

// Adaptive Simpson with Richardson extrapolation. Stops a panel when the
// local error estimate meets the shared budget; throws NumericError naming
// the achieved tolerance when refinement bottoms out before converging.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol = 0.0);

}  // namespace nomapair
