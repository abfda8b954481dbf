#pragma once

#include <vector>

#include "degenlab/admissibility.hpp"
#include "degenlab/integral.hpp"
#include "degenlab/profile.hpp"

namespace degenlab::constitutive {

/// All constitutive quantities at one concentration, sharing one evaluation of I.
struct PointValues {
  double s = 0.0;
  double P = 0.0;
  double I = 0.0;
  double PI = 0.0;
  double H = 0.0;
  double h = 0.0;
  double F = 0.0;
  double F_prime = 0.0;
  double G_prime = 0.0;
};

struct BundleDiagnostics {
  double A2_deviation = 0.0;  ///< max |[sF]^{lambda/2} / H - 1| on the probe grid
  bool G_bound = true;        ///< G <= sqrt(s F) on the probe grid
  bool monotone = true;       ///< H, F, G strictly increasing on the probe grid
  double C1 = 0.0;            ///< empirical sup F / (G G')
};

/// H, h, F, F', G, G' and H~' built from a profile P and the exponent Lambda:
///   H = [Lambda I]^{-1/Lambda},  h = H^{Lambda+1} / (s P),  F = h P,
///   G = int_0^s sqrt(F'),        H~' = sqrt(h / F) = P^{-1/2}.
/// Immutable after construction.
class ConstitutiveBundle {
 public:
  const DegeneracyProfile& profile() const noexcept { return profile_; }
  double Lambda() const noexcept { return Lambda_; }
  double lambda() const noexcept { return lambda_; }
  /// Lambda^{-1/Lambda - 1}, the prefactor of F.
  double prefactor() const noexcept { return prefactor_; }

  double A() const noexcept { return scan_.A; }
  double a() const noexcept { return scan_.a; }
  double B() const noexcept { return scan_.B; }
  double C1() const noexcept { return diagnostics_.C1; }
  const ProfileScan& scan() const noexcept { return scan_; }
  const BundleDiagnostics& diagnostics() const noexcept { return diagnostics_; }

  double upper() const noexcept { return profile_.upper(); }
  /// Largest s at which G is tabulated (M, or slightly below when I(M) = 0).
  double g_upper() const noexcept { return s_cap_; }
  double probe_lo() const noexcept { return probe_lo_; }
  double probe_hi() const noexcept { return probe_hi_; }
  std::vector<double> probe_grid(int count = 200) const;

  PointValues at(double s) const;

  double I(double s) const;
  double H(double s) const;
  double h(double s) const;
  double F(double s) const;
  double F_prime(double s) const;
  double G(double s) const;
  double G_prime(double s) const;
  double H_tilde_prime(double s) const;
  double log_H(double s) const;
  double log_F(double s) const;

 private:
  friend ConstitutiveBundle build_bundle(DegeneracyProfile, double, const ProfileScan&);

  ConstitutiveBundle(DegeneracyProfile profile, double Lambda, ProfileScan scan);

  double log_integrand_G(double x) const;  // ln(G'(e^x) e^x)
  void build_G_table();
  void compute_diagnostics();

  DegeneracyProfile profile_;
  double Lambda_;
  double lambda_;
  double prefactor_;
  double slope_bound_;  // (Lambda+1)/Lambda
  ProfileScan scan_;
  BundleDiagnostics diagnostics_;
  double s_cap_ = 0.0;
  double probe_lo_ = 0.0;
  double probe_hi_ = 0.0;
  double knot_x0_ = 0.0;
  double knot_dx_ = 0.0;
  double tail_rate_ = 0.0;
  std::vector<double> knot_G_;
};

ConstitutiveBundle build_bundle(DegeneracyProfile profile, double Lambda);
ConstitutiveBundle build_bundle(DegeneracyProfile profile, double Lambda, const ProfileScan& scan);

/// max over samples of |[sF(s)]^{lambda/2} / H(s) - 1|.
double verify_A2(const ConstitutiveBundle& bundle, const std::vector<double>& samples);

/// H'(s) / G'(s) from the closed forms in I, P and Lambda.
double ratio_HG(const ConstitutiveBundle& bundle, double s);

}  // namespace degenlab::constitutive
