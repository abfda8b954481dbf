#include "degenlab/integral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "degenlab/error.hpp"
#include "degenlab/quadrature.hpp"

namespace degenlab::constitutive {

namespace {

constexpr double kPanelTol = 1e-12;

// int_0^D exp(-[ln P(s e^d) - ln P(s)]) dd, split into geometrically growing
// panels that start at the decay length 1 / (s P'/P).
double scaled_integral(const DegeneracyProfile& profile, double s, double D) {
  if (D <= 0.0) return 0.0;
  auto integrand = [&](double d) { return std::exp(-profile.log_ratio(s, d)); };

  double width = D / 64.0;
  if (auto e = profile.elasticity(s); e && *e > 0.0) width = std::min(D, 1.0 / *e);

  double total = 0.0;
  double lo = 0.0;
  double hi = width;
  while (lo < D) {
    hi = std::min(hi, D);
    total += quad::integrate(integrand, lo, hi, kPanelTol, 1e-300).value;
    if (profile.monotone() && hi < D && integrand(hi) * (D - hi) < 1e-18 * total) break;
    lo = hi;
    hi = 2.0 * hi;
  }
  return total;
}

}  // namespace

IntegralValue integral_I(const DegeneracyProfile& profile, double s) {
  if (!profile.degenerate()) {
    throw Error(ErrorCode::InvalidArgument, "I is undefined for a calibration profile");
  }
  const double M = profile.upper();
  if (!(s > 0.0) || s > M * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "I(s) requires s in (0, M], got s = " << s;
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
  if (profile.has_closed_form_integral()) {
    const double p = profile.parameter();
    return {-p * std::log(s) - std::log(p), 1.0 / p};
  }
  const double D = std::log(M / std::min(s, M));
  double PI = scaled_integral(profile, s, D);
  if (profile.tail() > 0.0) PI += profile.tail() * profile.value(s);
  const double log_I =
      PI > 0.0 ? std::log(PI) - profile.log_value(s) : -std::numeric_limits<double>::infinity();
  return {log_I, PI};
}

double eval_I(const DegeneracyProfile& profile, double s) {
  return std::exp(integral_I(profile, s).log_I);
}

double eval_PI(const DegeneracyProfile& profile, double s) { return integral_I(profile, s).PI; }

double eval_sIPprime(const DegeneracyProfile& profile, double s) {
  const auto e = profile.elasticity(s);
  if (!e) return std::numeric_limits<double>::quiet_NaN();
  return integral_I(profile, s).PI * *e;
}

}  // namespace degenlab::constitutive
