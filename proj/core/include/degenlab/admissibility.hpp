#pragma once

#include <string>
#include <vector>

#include "degenlab/error.hpp"
#include "degenlab/limits.hpp"
#include "degenlab/profile.hpp"

namespace degenlab::constitutive {

/// Lambda-independent constants of a profile: A = sup P I, a = limsup_{s->0} P I,
/// B = sup s I P'.
struct ProfileScan {
  double A = 0.0;
  double A_argmax = 0.0;
  double a = 0.0;
  double a_band = 0.0;
  bool a_diverging = false;
  bool B_available = false;
  double B = 0.0;
  double B_limit = 0.0;  ///< lim_{s->0} s I P' estimate
  double B_limit_band = 0.0;
  double scan_lo = 0.0;
  double scan_hi = 0.0;
};

ProfileScan scan_profile(const DegeneracyProfile& profile);

struct AdmissibilityChecks {
  bool A_finite = false;
  bool lambda_ok = false;  ///< (Lambda+1)/Lambda > A
  bool a_ok = false;       ///< (Lambda+1)/Lambda > a
  bool B_finite = false;
  bool F_monotone = false;
  bool A2_ok = false;
  bool G_bound = false;
  bool C1_finite = false;
};

struct AdmissibilityReport {
  double Lambda = 0.0;
  double lambda = 0.0;
  double A = 0.0;
  double a = 0.0;
  double a_band = 0.0;
  double B = 0.0;       ///< NaN when the profile is not differentiable
  double mu = 0.0;      ///< chosen mu >= B
  double C1 = 0.0;      ///< empirical sup F / (G G'), NaN when not built
  double lambda_upper = 0.0;  ///< admissible Lambda lie in (0, lambda_upper)
  double A2_deviation = 0.0;
  double probe_lo = 0.0;
  double probe_hi = 0.0;
  int probe_count = 0;
  AdmissibilityChecks checks;
  bool passed = false;
  std::vector<ErrorCode> errors;
  std::vector<std::string> notes;
};

AdmissibilityReport analyze_profile(const DegeneracyProfile& profile, double Lambda);

}  // namespace degenlab::constitutive
