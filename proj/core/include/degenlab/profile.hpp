#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace degenlab::constitutive {

enum class ProfileKind { Power, ExpInverse, ZetaBounded, ZetaUnbounded, Tabulated, Calibration };
enum class TailPolicy { ClosedForm, AdditiveConstant };

std::string_view to_string(ProfileKind kind) noexcept;
std::string_view to_string(TailPolicy policy) noexcept;

/// Degeneracy profile P on [0, M]: the effective diffusivity of the free
/// jumps as a function of concentration, with P(0) = 0 and P > 0 on (0, M].
///
/// Every kind exposes P in the log domain. The quantity that drives the
/// whole constitutive construction is the log ratio
///   ln P(s e^d) - ln P(s),
/// which each kind evaluates without cancellation, so that P(s) I(s) stays
/// computable where P itself under- or overflows (exp-inverse near 0).
class DegeneracyProfile {
 public:
  using ScalarFn = std::function<double(double)>;

  /// P(s) = s^p on [0, inf); I has the closed form s^{-p}/p.
  static DegeneracyProfile power(double p, double M = 1.0);
  /// Power law on [0, M] whose I is integrated numerically up to M and
  /// completed by an additive tail (used to exercise the quadrature path).
  static DegeneracyProfile power_truncated(double p, double M, double tail);
  /// P(s) = exp(-s^{-gamma}).
  static DegeneracyProfile exp_inverse(double gamma, double M = 1.0, double tail = 0.0);
  /// P(s) = exp(-int_s^M zeta(t)/t dt) with 0 < k1 < zeta < k2.
  static DegeneracyProfile zeta_bounded(ScalarFn zeta, double M = 1.0, double tail = 0.0,
                                        std::string label = "zeta");
  /// Same construction with zeta ~ zeta0, zeta0 -> inf at 0, zeta0' <= 0.
  static DegeneracyProfile zeta_unbounded(ScalarFn zeta, ScalarFn zeta0, double M = 1.0,
                                          double tail = 0.0, std::string label = "zeta");
  /// Piecewise-linear samples; (0, 0) is prepended when missing.
  static DegeneracyProfile tabulated(std::vector<double> s, std::vector<double> p,
                                     double tail = 0.0);
  /// Constant diffusivity. Only valid as solver calibration input.
  static DegeneracyProfile calibration(double diffusivity);

  ProfileKind kind() const noexcept { return kind_; }
  TailPolicy tail_policy() const noexcept { return tail_policy_; }
  double upper() const noexcept { return M_; }
  double tail() const noexcept { return tail_; }
  /// Exponent p (power) or gamma (exp-inverse); diffusivity for calibration.
  double parameter() const noexcept { return param_; }
  const std::string& label() const noexcept { return label_; }
  std::map<std::string, double> parameters() const;

  double value(double s) const;
  double log_value(double s) const;
  /// ln P(s e^delta) - ln P(s), delta >= 0.
  double log_ratio(double s, double delta) const;
  /// s P'(s) / P(s); empty for kinds that are not differentiable.
  std::optional<double> elasticity(double s) const;

  bool has_closed_form_integral() const noexcept {
    return tail_policy_ == TailPolicy::ClosedForm;
  }
  bool differentiable() const noexcept { return elasticity_available_; }
  /// True when P is known to be non-decreasing (allows early truncation of I).
  bool monotone() const noexcept { return monotone_; }
  bool degenerate() const noexcept { return kind_ != ProfileKind::Calibration; }

  /// Ratio bounds k3 <= zeta/zeta0 <= k4 sampled on (0, M] (zeta-unbounded only).
  std::optional<std::pair<double, double>> zeta_ratio_bounds() const;

 private:
  DegeneracyProfile() = default;

  double zeta_integral(double s, double delta) const;
  double zeta_tail(double x) const;
  void build_zeta_table();

  ProfileKind kind_ = ProfileKind::Power;
  TailPolicy tail_policy_ = TailPolicy::ClosedForm;
  double M_ = 1.0;
  double tail_ = 0.0;
  double param_ = 1.0;
  bool elasticity_available_ = true;
  bool monotone_ = true;
  std::string label_;
  ScalarFn zeta_;
  ScalarFn zeta0_;
  // Cumulative int_x^{ln M} zeta(e^t) dt on a uniform grid in x = ln s.
  std::shared_ptr<const std::vector<double>> zeta_cum_;
  double zeta_x0_ = 0.0;
  std::vector<double> table_s_;
  std::vector<double> table_p_;
};

/// Options for the composition P = sigma / tau of the scalar free-jump
/// parameters.
struct ReductionOptions {
  double bound = 1e6;            ///< configured C with P <= C
  double degeneracy_tol = 1e-6;  ///< liminf_{s->0} P must fall below this
};

/// Reduces the scalar hypothesis (sigma_ij = sigma delta_ij) to a
/// degeneracy profile sampled on `samples`. The ellipticity bounds of the
/// reduction are c1 = c2 = 1 in this scalar case.
DegeneracyProfile reduce_hypothesis(const DegeneracyProfile::ScalarFn& tau,
                                    const DegeneracyProfile::ScalarFn& sigma,
                                    const std::vector<double>& samples,
                                    const ReductionOptions& options = {});

struct EllipticityBounds {
  double c1 = 1.0;
  double c2 = 1.0;
};
inline constexpr EllipticityBounds kScalarEllipticity{};

}  // namespace degenlab::constitutive
