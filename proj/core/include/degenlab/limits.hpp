#pragma once

#include <functional>
#include <vector>

namespace degenlab::constitutive {

/// Endpoint limit estimate with an uncertainty band.
struct LimitEstimate {
  double value = 0.0;
  double band = 0.0;
  bool diverging = false;
  std::vector<double> samples_s;
  std::vector<double> samples_f;

  /// A claim "limit = L" holds when the band contains L and is narrower
  /// than max_width.
  bool supports(double L, double max_width = 1e-3) const;
};

/// Estimates lim_{s->0} f(s) from values on the decreasing sequence `s`
/// using one Aitken delta-squared pass (geometric convergence at an unknown rate).
LimitEstimate estimate_limit_at_zero(const std::function<double(double)>& f,
                                     const std::vector<double>& s);

/// Geometric sequence s_k = start * ratio^k, k = 0..count-1.
std::vector<double> geometric_sequence(double start, double ratio, int count);

/// count points log-spaced on [lo, hi] (inclusive).
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace degenlab::constitutive
