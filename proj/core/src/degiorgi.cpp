#include "degenlab/degiorgi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "degenlab/error.hpp"
#include "degenlab/grid_integrals.hpp"

namespace degenlab::degiorgi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_b(double b) {
  if (!(b > 2.0) || !std::isfinite(b)) {
    std::ostringstream msg;
    msg << "b must exceed 2, got " << b;
    throw Error(ErrorCode::BadB, msg.str());
  }
}

}  // namespace

double radius(double b, double R, int n) {
  require_b(b);
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "radius index must be non-negative");
  return R * (b - 2.0 + std::pow(b, -n)) / (b - 1.0);
}

double limit_radius(double b, double R) {
  require_b(b);
  return R * (b - 2.0) / (b - 1.0);
}

double b_for_radii(double R, double Rprime) {
  if (!(R > 0.0) || !(Rprime > 0.0) || !(Rprime < R)) {
    throw Error(ErrorCode::InvalidArgument, "radii need 0 < Rprime < R");
  }
  const double rho = Rprime / R;
  return (2.0 - rho) / (1.0 - rho);
}

double cutoff(double distance, int n, double b, double R) {
  const double outer = radius(b, R, n);
  const double inner = radius(b, R, n + 1);
  if (distance >= outer) return 0.0;
  return std::min((outer - distance) / (outer - inner), 1.0);
}

double sobolev_constant(int N) {
  if (N < 3) throw Error(ErrorCode::DimensionUnsupported, "Sobolev constant needs N >= 3");
  const double n = N;
  const double K2 = 1.0 / (std::numbers::pi * n * (n - 2.0)) *
                    std::pow(std::tgamma(n) / std::tgamma(0.5 * n), 2.0 / n);
  return K2;
}

DeGiorgiParams exponents(int N, double lambda, double b, double R, double C1, double S) {
  if (N <= 2) {
    std::ostringstream msg;
    msg << "j = 2/(N-2) is undefined for N = " << N;
    throw Error(ErrorCode::DimensionUnsupported, msg.str());
  }
  if (!(lambda > 0.0 && lambda < 2.0)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0, 2)");
  }
  require_b(b);
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  if (!(C1 >= 0.0) || !std::isfinite(C1)) throw Error(ErrorCode::InvalidArgument, "C1 must be finite");

  DeGiorgiParams p;
  p.N = N;
  p.b = b;
  p.R = R;
  p.Rprime = limit_radius(b, R);
  p.lambda = lambda;
  p.j = 2.0 / (N - 2.0);
  p.k = (2.0 - lambda) / (2.0 + 2.0 * p.j - lambda);
  p.gamma = (1.0 - (1.0 + p.j) * p.k) / (p.k * p.j);
  p.S = S > 0.0 ? S : sobolev_constant(N);
  p.C1 = C1;
  p.C2 = 1.0;
  p.D = std::pow(b, 4) / (R * R) * (2.0 * C1 * C1 + 1.0) * std::pow(p.C2, 1.0 - p.k) *
        std::pow(p.S, p.k * (1.0 + p.j));
  const double kj = p.k * p.j;
  p.threshold = std::exp(-std::log(p.D) / kj - 2.0 * std::log(b) / (kj * kj));

  const double identity = lambda / (2.0 - lambda);
  if (std::abs(p.gamma - identity) > 1e-9 * std::max(1.0, identity)) {
    std::ostringstream msg;
    msg << "gamma = " << p.gamma << " but lambda/(2-lambda) = " << identity;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  return p;
}

DeGiorgiParams params_for_radii(int N, double lambda, double R, double Rprime, double C1,
                                double S) {
  DeGiorgiParams p = exponents(N, lambda, b_for_radii(R, Rprime), R, C1, S);
  p.Rprime = Rprime;
  return p;
}

ExcessFields::ExcessFields(const Trajectory& trajectory, const ConstitutiveBundle& bundle,
                           bool excess)
    : trajectory_(&trajectory), bundle_(&bundle), excess_(excess) {
  H_.reserve(trajectory.snapshots.size());
  G_.reserve(trajectory.snapshots.size());
  for (const auto& u : trajectory.snapshots) {
    std::vector<double> h(u.size()), g(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double s = argument(u[i]);
      h[i] = bundle.H(s);
      g[i] = bundle.G(s);
    }
    H_.push_back(std::move(h));
    G_.push_back(std::move(g));
  }
}

double ExcessFields::argument(double u) const {
  // Round-off can leave u a few ulps below eps; H(0) = G(0) = 0.
  const double s = excess_ ? u - trajectory_->epsilon() : u;
  return std::max(s, 0.0);
}

std::pair<std::vector<double>, std::vector<double>> ExcessFields::at(double t) const {
  const auto u = trajectory_->at(t);
  std::vector<double> h(u.size()), g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = argument(u[i]);
    h[i] = bundle_->H(s);
    g[i] = bundle_->G(s);
  }
  return {std::move(h), std::move(g)};
}

YTerms evaluate_Y_terms(const ExcessFields& fields, const DeGiorgiParams& params, double Tprime,
                        int n) {
  const Trajectory& traj = fields.trajectory();
  const auto& geo = traj.geometry;
  const double T = traj.final_time();
  if (!(Tprime > 0.0) || Tprime > T * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "T' = " << Tprime << " outside (0, " << T << "]";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }

  std::vector<double> theta(geo.size());
  for (std::size_t i = 0; i < geo.size(); ++i) theta[i] = params.cutoff(geo.distance(i, 0.0), n);

  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy;
  auto add = [&](double t, const std::vector<double>& H, const std::vector<double>& G) {
    std::vector<double> a(H.size()), b(G.size());
    for (std::size_t i = 0; i < H.size(); ++i) {
      a[i] = theta[i] * theta[i] * H[i];
      b[i] = theta[i] * G[i];
    }
    times.push_back(t);
    mass.push_back(solver::integrate(geo, a));
    energy.push_back(solver::gradient_sq_integral(geo, b));
  };
  const double snap_tol = 1e-12 * std::max(T, 1.0);
  for (std::size_t k = 0; k < traj.times.size() && traj.times[k] <= Tprime + snap_tol; ++k) {
    add(traj.times[k], fields.H()[k], fields.G()[k]);
  }
  if (times.back() < Tprime - snap_tol) {
    const auto [H, G] = fields.at(Tprime);
    add(Tprime, H, G);
  }
  if (times.size() < kMinSnapshots) {
    std::ostringstream msg;
    msg << times.size() << " snapshots in [0, " << Tprime << "], need " << kMinSnapshots;
    throw Error(ErrorCode::InsufficientSnapshots, msg.str());
  }

  YTerms out;
  out.sup_H = *std::max_element(mass.begin(), mass.end());
  out.grad_G = solver::time_trapezoid(times, energy);
  out.value = std::pow(Tprime, params.gamma) * (out.sup_H + out.grad_G);
  return out;
}

double evaluate_Y(const ExcessFields& fields, const DeGiorgiParams& params, double Tprime, int n) {
  return evaluate_Y_terms(fields, params, Tprime, n).value;
}

double evaluate_Y(const Trajectory& trajectory, const ConstitutiveBundle& bundle,
                  const DeGiorgiParams& params, double Tprime, int n) {
  return evaluate_Y(ExcessFields(trajectory, bundle), params, Tprime, n);
}

std::optional<double> find_T_star(const ExcessFields& fields, const DeGiorgiParams& params,
                                  double rel_tol) {
  const auto& times = fields.trajectory().times;
  if (times.size() < kMinSnapshots) {
    throw Error(ErrorCode::InsufficientSnapshots, "trajectory has too few snapshots");
  }
  double lo = times[kMinSnapshots - 1];
  double hi = times.back();
  if (evaluate_Y(fields, params, hi, 0) <= params.threshold) return hi;
  if (evaluate_Y(fields, params, lo, 0) > params.threshold) return std::nullopt;
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (evaluate_Y(fields, params, mid, 0) <= params.threshold) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::vector<double> recursion_rhs(const std::vector<double>& Y, const DeGiorgiParams& params) {
  std::vector<double> rhs;
  const double kj = params.k * params.j;
  for (std::size_t n = 1; n < Y.size(); ++n) {
    rhs.push_back(params.D * std::pow(params.b * params.b, static_cast<double>(n) - 1.0) *
                  std::pow(Y[n - 1], 1.0 + kj));
  }
  return rhs;
}

std::vector<double> check_recursion(const std::vector<double>& Y, const DeGiorgiParams& params) {
  auto margins = recursion_rhs(Y, params);
  for (std::size_t n = 1; n < Y.size(); ++n) margins[n - 1] -= Y[n];
  return margins;
}

LadyzhenskayaResult ladyzhenskaya(double y0, double c, double b, double eps, int n_max) {
  if (!(c > 0.0) || !(eps > 0.0) || !(b >= 1.0) || !(y0 >= 0.0) || n_max < 0 ||
      !std::isfinite(c) || !std::isfinite(b) || !std::isfinite(eps) || !std::isfinite(y0)) {
    throw Error(ErrorCode::BadParams, "need c > 0, eps > 0, b >= 1, y0 >= 0, n_max >= 0");
  }
  LadyzhenskayaResult out;
  const double log_c = std::log(c);
  const double log_b = std::log(b);
  const double log_theta = -log_c / eps - log_b / (eps * eps);
  out.threshold = std::exp(log_theta);
  out.converges = y0 <= out.threshold && b > 1.0;

  const double log_y0 = y0 > 0.0 ? std::log(y0) : -kInf;
  double dev = log_y0 - log_theta;
  for (int n = 0; n <= n_max; ++n) {
    const double log_decay = log_theta - n * log_b / eps;
    out.log_deviation.push_back(dev);
    out.decay_bound.push_back(std::exp(log_decay));
    out.sequence.push_back(y0 > 0.0 ? std::exp(log_decay + dev) : 0.0);
    const double growth = std::pow(1.0 + eps, n);
    const double log_bound = (growth - 1.0) / eps * log_c +
                             ((growth - 1.0) / (eps * eps) - n / eps) * log_b + growth * log_y0;
    out.bound.push_back(y0 > 0.0 ? std::exp(log_bound) : 0.0);
    dev *= 1.0 + eps;
  }
  return out;
}

double FrontTrace::localization_time(double Rprime) const {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (front_radius[k] < Rprime) return k == 0 ? 0.0 : times[k - 1];
  }
  return times.empty() ? 0.0 : times.back();
}

FrontTrace front_trace(const Trajectory& trajectory, double x0, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  const auto& geo = trajectory.geometry;
  const double eps = trajectory.epsilon();

  std::size_t center = 0;
  for (std::size_t i = 1; i < geo.size(); ++i) {
    if (geo.distance(i, x0) < geo.distance(center, x0)) center = i;
  }
  if (trajectory.snapshots.front()[center] > eps + tol) {
    std::ostringstream msg;
    msg << "u(x0, 0) - eps = " << trajectory.snapshots.front()[center] - eps << " exceeds tol";
    throw Error(ErrorCode::CenterNotClean, msg.str());
  }

  FrontTrace out;
  out.tol = tol;
  out.x0 = x0;
  out.times = trajectory.times;
  const double far = geo.max_distance(x0);
  for (const auto& u : trajectory.snapshots) {
    double front = far;
    for (std::size_t i = 0; i < geo.size(); ++i) {
      if (u[i] - eps > tol) front = std::min(front, geo.distance(i, x0));
    }
    out.front_radius.push_back(front);
  }
  return out;
}

}  // namespace degenlab::degiorgi
