#pragma once

#include "degenlab/profile.hpp"

namespace degenlab::constitutive {

/// I(s) = int_s^inf dt / (t P(t)) represented in the log domain together
/// with the bounded product P(s) I(s).
struct IntegralValue {
  double log_I = 0.0;  ///< -inf when I(s) = 0 (s = M with zero tail)
  double PI = 0.0;     ///< P(s) * I(s)
};

/// Evaluates I for s in (0, M]. Closed-form kinds use the exact tail; the
/// others integrate int_s^M in the variable ln t and add the configured tail.
IntegralValue integral_I(const DegeneracyProfile& profile, double s);

double eval_I(const DegeneracyProfile& profile, double s);
double eval_PI(const DegeneracyProfile& profile, double s);
/// s I(s) P'(s); NaN for non-differentiable kinds.
double eval_sIPprime(const DegeneracyProfile& profile, double s);

}  // namespace degenlab::constitutive
