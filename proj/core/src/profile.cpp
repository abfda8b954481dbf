#include "degenlab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "degenlab/error.hpp"
#include "degenlab/limits.hpp"
#include "degenlab/quadrature.hpp"

namespace degenlab::constitutive {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view to_string(ProfileKind kind) noexcept {
  switch (kind) {
    case ProfileKind::Power: return "power";
    case ProfileKind::ExpInverse: return "exp-inverse";
    case ProfileKind::ZetaBounded: return "zeta-bounded";
    case ProfileKind::ZetaUnbounded: return "zeta-unbounded";
    case ProfileKind::Tabulated: return "tabulated";
    case ProfileKind::Calibration: return "calibration";
  }
  return "unknown";
}

std::string_view to_string(TailPolicy policy) noexcept {
  return policy == TailPolicy::ClosedForm ? "closed-form" : "additive-constant";
}

DegeneracyProfile DegeneracyProfile::power(double p, double M) {
  require(p > 0.0 && std::isfinite(p), "power exponent p must be positive");
  require(M > 0.0 && std::isfinite(M), "upper endpoint M must be positive");
  DegeneracyProfile out;
  out.kind_ = ProfileKind::Power;
  out.param_ = p;
  out.M_ = M;
  out.label_ = "power";
  return out;
}

DegeneracyProfile DegeneracyProfile::power_truncated(double p, double M, double tail) {
  DegeneracyProfile out = power(p, M);
  require(tail >= 0.0, "tail constant must be non-negative");
  out.tail_policy_ = TailPolicy::AdditiveConstant;
  out.tail_ = tail;
  return out;
}

DegeneracyProfile DegeneracyProfile::exp_inverse(double gamma, double M, double tail) {
  require(gamma > 0.0 && std::isfinite(gamma), "exp-inverse exponent must be positive");
  require(M > 0.0 && std::isfinite(M), "upper endpoint M must be positive");
  require(tail >= 0.0, "tail constant must be non-negative");
  DegeneracyProfile out;
  out.kind_ = ProfileKind::ExpInverse;
  out.tail_policy_ = TailPolicy::AdditiveConstant;
  out.param_ = gamma;
  out.M_ = M;
  out.tail_ = tail;
  out.label_ = "exp-inverse";
  return out;
}

DegeneracyProfile DegeneracyProfile::zeta_bounded(ScalarFn zeta, double M, double tail,
                                                  std::string label) {
  require(static_cast<bool>(zeta), "zeta function required");
  require(M > 0.0 && std::isfinite(M), "upper endpoint M must be positive");
  require(tail >= 0.0, "tail constant must be non-negative");
  DegeneracyProfile out;
  out.kind_ = ProfileKind::ZetaBounded;
  out.tail_policy_ = TailPolicy::AdditiveConstant;
  out.M_ = M;
  out.tail_ = tail;
  out.zeta_ = std::move(zeta);
  out.label_ = std::move(label);
  out.build_zeta_table();
  return out;
}

DegeneracyProfile DegeneracyProfile::zeta_unbounded(ScalarFn zeta, ScalarFn zeta0, double M,
                                                    double tail, std::string label) {
  require(static_cast<bool>(zeta0), "zeta0 function required");
  DegeneracyProfile out = zeta_bounded(std::move(zeta), M, tail, std::move(label));
  out.kind_ = ProfileKind::ZetaUnbounded;
  out.zeta0_ = std::move(zeta0);
  return out;
}

DegeneracyProfile DegeneracyProfile::tabulated(std::vector<double> s, std::vector<double> p,
                                               double tail) {
  require(s.size() == p.size() && s.size() >= 2, "tabulated profile needs matching samples");
  require(tail >= 0.0, "tail constant must be non-negative");
  if (s.front() != 0.0) {
    s.insert(s.begin(), 0.0);
    p.insert(p.begin(), 0.0);
  }
  require(p.front() == 0.0, "tabulated profile must satisfy P(0) = 0");
  for (std::size_t i = 1; i < s.size(); ++i) {
    require(s[i] > s[i - 1], "tabulated abscissae must be strictly increasing");
    require(p[i] > 0.0 && std::isfinite(p[i]), "tabulated P must be positive on (0, M]");
  }
  DegeneracyProfile out;
  out.kind_ = ProfileKind::Tabulated;
  out.tail_policy_ = TailPolicy::AdditiveConstant;
  out.M_ = s.back();
  out.tail_ = tail;
  out.elasticity_available_ = false;
  out.monotone_ = std::is_sorted(p.begin(), p.end());
  out.label_ = "tabulated";
  out.table_s_ = std::move(s);
  out.table_p_ = std::move(p);
  return out;
}

DegeneracyProfile DegeneracyProfile::calibration(double diffusivity) {
  require(diffusivity > 0.0 && std::isfinite(diffusivity), "diffusivity must be positive");
  DegeneracyProfile out;
  out.kind_ = ProfileKind::Calibration;
  out.param_ = diffusivity;
  out.M_ = kInf;
  out.label_ = "calibration";
  return out;
}

std::map<std::string, double> DegeneracyProfile::parameters() const {
  std::map<std::string, double> out{{"M", M_}};
  switch (kind_) {
    case ProfileKind::Power: out["p"] = param_; break;
    case ProfileKind::ExpInverse: out["gamma"] = param_; break;
    case ProfileKind::Calibration: out["D"] = param_; break;
    case ProfileKind::Tabulated: out["samples"] = static_cast<double>(table_s_.size()); break;
    default: break;
  }
  if (tail_policy_ == TailPolicy::AdditiveConstant) out["I_tail"] = tail_;
  return out;
}

constexpr double kZetaDx = 0.25;
constexpr int kZetaCells = 2800;  // covers s down to about 1e-304 M

void DegeneracyProfile::build_zeta_table() {
  const double x_top = std::log(M_);
  zeta_x0_ = x_top - kZetaDx * kZetaCells;
  auto integrand = [this](double t) { return zeta_(std::exp(t)); };
  std::vector<double> cum(kZetaCells + 1, 0.0);
  for (int k = kZetaCells - 1; k >= 0; --k) {
    const double a = zeta_x0_ + kZetaDx * k;
    cum[static_cast<std::size_t>(k)] =
        cum[static_cast<std::size_t>(k) + 1] + quad::integrate(integrand, a, a + kZetaDx, 1e-13, 1e-300).value;
  }
  zeta_cum_ = std::make_shared<const std::vector<double>>(std::move(cum));
}

// int_x^{ln M} zeta(e^t) dt
double DegeneracyProfile::zeta_tail(double x) const {
  auto integrand = [this](double t) { return zeta_(std::exp(t)); };
  if (x < zeta_x0_) {
    return (*zeta_cum_)[0] + quad::integrate(integrand, x, zeta_x0_, 1e-13, 1e-300).value;
  }
  const auto k = std::min(static_cast<std::size_t>((x - zeta_x0_) / kZetaDx),
                          static_cast<std::size_t>(kZetaCells - 1));
  const double b = zeta_x0_ + kZetaDx * static_cast<double>(k + 1);
  return (*zeta_cum_)[k + 1] + quad::kronrod15(integrand, x, b);
}

double DegeneracyProfile::zeta_integral(double s, double delta) const {
  // int_s^{s e^delta} zeta(t)/t dt = int_0^delta zeta(s e^u) du
  if (delta <= 0.0) return 0.0;
  const double x = std::log(s);
  if (delta <= kZetaDx) {
    auto integrand = [this, x](double u) { return zeta_(std::exp(x + u)); };
    return quad::kronrod15(integrand, 0.0, delta);
  }
  return zeta_tail(x) - zeta_tail(x + delta);
}

double DegeneracyProfile::value(double s) const {
  if (kind_ == ProfileKind::Calibration) return param_;
  if (s <= 0.0) return 0.0;
  switch (kind_) {
    case ProfileKind::Power: return std::pow(s, param_);
    case ProfileKind::Tabulated: {
      if (s >= table_s_.back()) return table_p_.back();
      auto it = std::upper_bound(table_s_.begin(), table_s_.end(), s);
      const std::size_t i = static_cast<std::size_t>(it - table_s_.begin());
      const double w = (s - table_s_[i - 1]) / (table_s_[i] - table_s_[i - 1]);
      return table_p_[i - 1] + w * (table_p_[i] - table_p_[i - 1]);
    }
    default: return std::exp(log_value(s));
  }
}

double DegeneracyProfile::log_value(double s) const {
  if (kind_ == ProfileKind::Calibration) return std::log(param_);
  if (s <= 0.0) return -kInf;
  switch (kind_) {
    case ProfileKind::Power: return param_ * std::log(s);
    case ProfileKind::ExpInverse: return -std::pow(s, -param_);
    case ProfileKind::ZetaBounded:
    case ProfileKind::ZetaUnbounded:
      if (s >= M_) return 0.0;
      return -zeta_tail(std::log(s));
    case ProfileKind::Tabulated: return std::log(value(s));
    case ProfileKind::Calibration: break;
  }
  return 0.0;
}

double DegeneracyProfile::log_ratio(double s, double delta) const {
  if (delta == 0.0) return 0.0;
  switch (kind_) {
    case ProfileKind::Power: return param_ * delta;
    case ProfileKind::ExpInverse:
      return std::pow(s, -param_) * -std::expm1(-param_ * delta);
    case ProfileKind::ZetaBounded:
    case ProfileKind::ZetaUnbounded: return zeta_integral(s, delta);
    case ProfileKind::Tabulated: return log_value(s * std::exp(delta)) - log_value(s);
    case ProfileKind::Calibration: return 0.0;
  }
  return 0.0;
}

std::optional<double> DegeneracyProfile::elasticity(double s) const {
  switch (kind_) {
    case ProfileKind::Power: return param_;
    case ProfileKind::ExpInverse: return param_ * std::pow(s, -param_);
    case ProfileKind::ZetaBounded:
    case ProfileKind::ZetaUnbounded: return zeta_(s);
    case ProfileKind::Calibration: return 0.0;
    case ProfileKind::Tabulated: break;
  }
  return std::nullopt;
}

std::optional<std::pair<double, double>> DegeneracyProfile::zeta_ratio_bounds() const {
  if (kind_ != ProfileKind::ZetaUnbounded) return std::nullopt;
  double lo = kInf;
  double hi = 0.0;
  for (double s : log_grid(1e-12 * M_, M_, 241)) {
    const double r = zeta_(s) / zeta0_(s);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return std::make_pair(lo, hi);
}

DegeneracyProfile reduce_hypothesis(const DegeneracyProfile::ScalarFn& tau,
                                    const DegeneracyProfile::ScalarFn& sigma,
                                    const std::vector<double>& samples,
                                    const ReductionOptions& options) {
  if (samples.size() < 2 || !std::is_sorted(samples.begin(), samples.end()) ||
      samples.front() <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "samples must be an increasing grid on (0, M]");
  }
  auto ratio = [&](double s) {
    const double t = tau(s);
    const double sg = sigma(s);
    if (!(t > 0.0)) {
      std::ostringstream msg;
      msg << "tau must be positive, tau(" << s << ") = " << t;
      throw Error(ErrorCode::InvalidArgument, msg.str());
    }
    if (sg < 0.0) throw Error(ErrorCode::InvalidArgument, "sigma must be non-negative");
    return sg / t;
  };

  std::vector<double> p;
  p.reserve(samples.size());
  for (double s : samples) {
    const double v = ratio(s);
    if (!(v <= options.bound)) {
      std::ostringstream msg;
      msg << "P(" << s << ") = " << v << " exceeds bound " << options.bound;
      throw Error(ErrorCode::RatioUnbounded, msg.str());
    }
    p.push_back(v);
  }

  // liminf at 0: probe the composition far below the sample grid; the
  // functions are analytic, so deep probes are legitimate.
  double liminf = p.front();
  for (double s = samples.front(); s > 1e-280; s *= 1e-20) {
    const double v = ratio(s);
    if (std::isfinite(v)) liminf = std::min(liminf, v);
  }
  if (liminf > options.degeneracy_tol) {
    std::ostringstream msg;
    msg << "liminf P(s) as s->0 estimated at " << liminf << " > " << options.degeneracy_tol;
    throw Error(ErrorCode::NotDegenerate, msg.str());
  }
  for (double v : p) {
    if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, "P must be positive on (0, M]");
  }
  return DegeneracyProfile::tabulated(samples, std::move(p));
}

}  // namespace degenlab::constitutive
