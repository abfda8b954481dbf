#include "degenlab/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "degenlab/error.hpp"
#include "degenlab/limits.hpp"
#include "degenlab/quadrature.hpp"

namespace degenlab::constitutive {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogFloor = -600.0;
constexpr double kKnotFloor = 1e-20;      // relative to M
constexpr double kGTol = 1e-10;         // above the noise of the nested I quadrature
constexpr double kKnotsPerDecade = 4.0;

}  // namespace

ConstitutiveBundle::ConstitutiveBundle(DegeneracyProfile profile, double Lambda, ProfileScan scan)
    : profile_(std::move(profile)),
      Lambda_(Lambda),
      lambda_(2.0 / (Lambda + 1.0)),
      prefactor_(std::pow(Lambda, -1.0 / Lambda - 1.0)),
      slope_bound_((Lambda + 1.0) / Lambda),
      scan_(scan) {}

PointValues ConstitutiveBundle::at(double s) const {
  PointValues v;
  v.s = s;
  if (!(s > 0.0)) return v;
  const IntegralValue iv = integral_I(profile_, s);
  const double log_P = profile_.log_value(s);
  const double log_s = std::log(s);
  const double log_L = std::log(Lambda_);
  const double log_H = -(log_L + iv.log_I) / Lambda_;
  const double log_F = -slope_bound_ * (log_L + Lambda_ / (Lambda_ + 1.0) * log_s + iv.log_I);
  const double margin = slope_bound_ - iv.PI;

  v.P = std::exp(log_P);
  v.I = std::exp(iv.log_I);
  v.PI = iv.PI;
  v.H = std::exp(log_H);
  v.h = std::exp((Lambda_ + 1.0) * log_H - log_s - log_P);
  v.F = std::exp(log_F);
  if (margin != 0.0) {
    const double mag = std::exp(std::log(prefactor_) - 2.0 * log_s -
                                (1.0 / Lambda_ + 2.0) * iv.log_I - log_P +
                                std::log(std::abs(margin)));
    v.F_prime = margin > 0.0 ? mag : -mag;
  }
  v.G_prime = v.F_prime > 0.0 ? std::sqrt(v.F_prime) : 0.0;
  return v;
}

double ConstitutiveBundle::I(double s) const { return eval_I(profile_, s); }

double ConstitutiveBundle::log_H(double s) const {
  if (!(s > 0.0)) return -kInf;
  return -(std::log(Lambda_) + integral_I(profile_, s).log_I) / Lambda_;
}

double ConstitutiveBundle::log_F(double s) const {
  if (!(s > 0.0)) return -kInf;
  const double log_I = integral_I(profile_, s).log_I;
  return -slope_bound_ * (std::log(Lambda_) + Lambda_ / (Lambda_ + 1.0) * std::log(s) + log_I);
}

double ConstitutiveBundle::H(double s) const { return s > 0.0 ? std::exp(log_H(s)) : 0.0; }
double ConstitutiveBundle::h(double s) const { return at(s).h; }
double ConstitutiveBundle::F(double s) const { return s > 0.0 ? std::exp(log_F(s)) : 0.0; }
double ConstitutiveBundle::F_prime(double s) const { return at(s).F_prime; }
double ConstitutiveBundle::G_prime(double s) const { return at(s).G_prime; }

double ConstitutiveBundle::H_tilde_prime(double s) const {
  return std::exp(-0.5 * profile_.log_value(s));
}

double ConstitutiveBundle::log_integrand_G(double x) const {
  const double s = std::exp(x);
  const IntegralValue iv = integral_I(profile_, s);
  const double margin = slope_bound_ - iv.PI;
  if (!(margin > 0.0)) return -kInf;
  return 0.5 * (std::log(prefactor_) - (1.0 / Lambda_ + 2.0) * iv.log_I - profile_.log_value(s) +
                std::log(margin));
}

void ConstitutiveBundle::build_G_table() {
  const double x_cap = std::log(s_cap_);
  // Start where G' s is representable; everything below contributes nothing.
  double x_floor = std::log(kKnotFloor * profile_.upper());
  while (x_floor + std::log(10.0) < x_cap && log_integrand_G(x_floor + std::log(10.0)) < -700.0) {
    x_floor += std::log(10.0);
  }
  const int n = std::max(
      8, static_cast<int>(std::ceil((x_cap - x_floor) / (std::log(10.0) / kKnotsPerDecade))));
  knot_x0_ = x_floor;
  knot_dx_ = (x_cap - x_floor) / n;

  // Below the floor G' s behaves like a power of s; its integral to -inf is
  // then g(x0) / rate.
  const double lg0 = log_integrand_G(x_floor);
  const double lg1 = log_integrand_G(x_floor + knot_dx_);
  tail_rate_ = 0.0;
  double G0 = 0.0;
  if (std::isfinite(lg0) && std::isfinite(lg1) && lg1 > lg0) {
    tail_rate_ = (lg1 - lg0) / knot_dx_;
    G0 = std::exp(lg0) / tail_rate_;
  }

  auto integrand = [this](double x) { return std::exp(log_integrand_G(x)); };
  knot_G_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  knot_G_[0] = G0;
  for (int k = 0; k < n; ++k) {
    const double a = x_floor + k * knot_dx_;
    const double b = (k + 1 == n) ? x_cap : a + knot_dx_;
    knot_G_[static_cast<std::size_t>(k) + 1] =
        knot_G_[static_cast<std::size_t>(k)] + quad::integrate(integrand, a, b, kGTol, 1e-300).value;
  }
}

double ConstitutiveBundle::G(double s) const {
  if (!(s > 0.0)) return 0.0;
  if (s > s_cap_ * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "G(s) tabulated up to " << s_cap_ << ", got " << s;
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
  const double x = std::min(std::log(s), knot_x0_ + knot_dx_ * static_cast<double>(knot_G_.size() - 1));
  if (x < knot_x0_) {
    return tail_rate_ > 0.0 ? knot_G_[0] * std::exp(tail_rate_ * (x - knot_x0_)) : 0.0;
  }
  const auto last = static_cast<std::ptrdiff_t>(knot_G_.size()) - 2;
  const auto k = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>((x - knot_x0_) / knot_dx_), last);
  const double xk = knot_x0_ + static_cast<double>(k) * knot_dx_;
  auto integrand = [this](double t) { return std::exp(log_integrand_G(t)); };
  return knot_G_[static_cast<std::size_t>(k)] + quad::integrate(integrand, xk, x, kGTol, 1e-300).value;
}

std::vector<double> ConstitutiveBundle::probe_grid(int count) const {
  return log_grid(probe_lo_, probe_hi_, count);
}

void ConstitutiveBundle::compute_diagnostics() {
  const auto grid = probe_grid(200);
  const double tol = 1e-10;
  double prev_H = -kInf, prev_F = -kInf, prev_G = -kInf;
  diagnostics_ = {};
  for (double s : grid) {
    const PointValues v = at(s);
    if (!(v.F_prime > 0.0)) {
      std::ostringstream msg;
      msg << "F'(" << s << ") = " << v.F_prime << " (P I = " << v.PI << ")";
      throw Error(ErrorCode::NonMonotoneF, msg.str());
    }
    const double G_s = G(s);
    const double dev = std::abs(
        std::expm1(0.5 * lambda_ * (std::log(s) + log_F(s)) - log_H(s)));
    diagnostics_.A2_deviation = std::max(diagnostics_.A2_deviation, dev);
    if (G_s > std::sqrt(s * v.F) * (1.0 + tol)) diagnostics_.G_bound = false;
    if (!(v.H > prev_H && v.F > prev_F && G_s > prev_G)) diagnostics_.monotone = false;
    prev_H = v.H;
    prev_F = v.F;
    prev_G = G_s;
    if (G_s > 0.0 && v.G_prime > 0.0) {
      diagnostics_.C1 = std::max(diagnostics_.C1, v.F / (G_s * v.G_prime));
    }
  }
}

ConstitutiveBundle build_bundle(DegeneracyProfile profile, double Lambda) {
  if (!profile.degenerate()) {
    throw Error(ErrorCode::InvalidArgument, "calibration profiles cannot form a bundle");
  }
  const ProfileScan scan = scan_profile(profile);
  return build_bundle(std::move(profile), Lambda, scan);
}

ConstitutiveBundle build_bundle(DegeneracyProfile profile, double Lambda, const ProfileScan& scan) {
  if (!profile.degenerate()) {
    throw Error(ErrorCode::InvalidArgument, "calibration profiles cannot form a bundle");
  }
  if (!(Lambda > 0.0) || !std::isfinite(Lambda)) {
    throw Error(ErrorCode::InvalidArgument, "Lambda must be a positive finite number");
  }
  const double bound = (Lambda + 1.0) / Lambda;
  if (scan.a_diverging || !(bound > scan.A)) {
    std::ostringstream msg;
    msg << "(Lambda+1)/Lambda = " << bound << " <= A = " << scan.A;
    throw Error(ErrorCode::InadmissibleLambda, msg.str());
  }

  ConstitutiveBundle bundle(std::move(profile), Lambda, scan);
  const double M = bundle.profile_.upper();
  const bool finite_at_M = integral_I(bundle.profile_, M).PI > 0.0;
  bundle.s_cap_ = finite_at_M ? M : 0.99 * M;
  bundle.probe_hi_ = finite_at_M ? M : 0.9 * M;

  double lo = 1e-8 * M;
  const double step = std::pow(10.0, 1.0 / kKnotsPerDecade);
  while (lo < bundle.probe_hi_ / step &&
         (bundle.log_H(lo) < kLogFloor || bundle.log_F(lo) < kLogFloor ||
          bundle.log_integrand_G(std::log(lo)) < kLogFloor)) {
    lo *= step;
  }
  bundle.probe_lo_ = lo;

  bundle.build_G_table();
  bundle.compute_diagnostics();
  return bundle;
}

double verify_A2(const ConstitutiveBundle& bundle, const std::vector<double>& samples) {
  double worst = 0.0;
  for (double s : samples) {
    if (!(s > 0.0) || s > bundle.upper() * (1.0 + 1e-12)) {
      throw Error(ErrorCode::OutOfDomain, "A-2 samples must lie in (0, M]");
    }
    const double log_lhs = 0.5 * bundle.lambda() * (std::log(s) + bundle.log_F(s));
    worst = std::max(worst, std::abs(std::expm1(log_lhs - bundle.log_H(s))));
  }
  return worst;
}

double ratio_HG(const ConstitutiveBundle& bundle, double s) {
  if (!(s > 0.0) || s > bundle.upper() * (1.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfDomain, "ratio_HG requires s in (0, M]");
  }
  const IntegralValue iv = integral_I(bundle.profile(), s);
  const double margin = (bundle.Lambda() + 1.0) / bundle.Lambda() - iv.PI;
  if (margin <= 1e-12) {
    std::ostringstream msg;
    msg << "(Lambda+1)/Lambda - P I = " << margin << " at s = " << s;
    throw Error(ErrorCode::DegenerateRatio, msg.str());
  }
  // H' = B I^{-1/L-1} / (s P),  G' = sqrt(B) I^{-1/(2L)-1} P^{-1/2} sqrt(margin) / s
  const double log_ratio = 0.5 * std::log(bundle.prefactor()) -
                           iv.log_I / (2.0 * bundle.Lambda()) -
                           0.5 * bundle.profile().log_value(s) - 0.5 * std::log(margin);
  return std::exp(log_ratio);
}

}  // namespace degenlab::constitutive
