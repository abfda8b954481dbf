#pragma once

#include <functional>

namespace degenlab::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

/// Globally adaptive Gauss-Kronrod (G7/K15) integration of f over a finite
/// [a, b]: the panel with the largest error estimate is bisected until the
/// summed estimate is below max(rel_tol * |value|, abs_tol) or max_panels is
/// reached. Throws Error{QuadratureDivergent} when the final estimate is
/// still well above tolerance.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 0.0, unsigned max_panels = 400);

/// Single non-adaptive K15 panel; used where the caller already controls
/// the panel width.
double kronrod15(const std::function<double(double)>& f, double a, double b);

}  // namespace degenlab::quad
