#include "degenlab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "degenlab/error.hpp"
#include "degenlab/grid_integrals.hpp"

namespace degenlab::estimates {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double lemma1_gap(const ConstitutiveBundle& bundle, const PointSample& sample, double C1) {
  if (sample.grad_u.size() != sample.grad_theta.size()) {
    throw Error(ErrorCode::DimensionMismatch, "grad u and grad theta differ in dimension");
  }
  if (C1 <= 0.0) C1 = bundle.C1();
  const double u = std::min(sample.u, bundle.g_upper());
  const auto v = bundle.at(u);
  const double G = bundle.G(u);
  const double th = sample.theta;
  const double uu = dot(sample.grad_u, sample.grad_u);
  const double ut = dot(sample.grad_u, sample.grad_theta);
  const double tt = dot(sample.grad_theta, sample.grad_theta);

  // grad(theta G) = theta G' grad u + G grad theta
  const double a = th * v.G_prime;
  const double grad_thetaG_sq = a * a * uu + 2.0 * a * G * ut + G * G * tt;
  const double lhs = th * th * v.F_prime * uu + 2.0 * th * v.F * ut;
  const double rhs = 0.5 * grad_thetaG_sq - (2.0 * C1 * C1 + 1.0) * G * G * tt;
  return lhs - rhs;
}

Lemma1Sweep lemma1_sweep(const ConstitutiveBundle& bundle, std::size_t count, int dimension,
                         std::uint64_t seed) {
  if (dimension < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  const double log_lo = std::log(bundle.probe_lo());
  const double log_hi = std::log(bundle.probe_hi());

  Lemma1Sweep out;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    PointSample s;
    s.u = std::exp(log_lo + (log_hi - log_lo) * unit(rng));
    s.theta = unit(rng);
    s.grad_u.resize(static_cast<std::size_t>(dimension));
    s.grad_theta.resize(static_cast<std::size_t>(dimension));
    for (auto& g : s.grad_u) g = comp(rng);
    for (auto& g : s.grad_theta) g = comp(rng);
    const double gap = lemma1_gap(bundle, s);
    if (gap < out.min_gap) {
      out.min_gap = gap;
      out.worst = s;
    }
  }
  out.samples = count;
  return out;
}

Lemma2Result lemma2_check(const ExcessFields& fields, const DeGiorgiParams& params,
                          double K_radius, double t) {
  if (!(K_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "K radius must be positive");
  if (params.radius(1) < K_radius) {
    std::ostringstream msg;
    msg << "K radius " << K_radius << " exceeds R_1 = " << params.radius(1)
        << "; no cutoff equals 1 on K";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  Lemma2Result out;
  constexpr int kMaxLevel = 64;
  while (out.n < kMaxLevel && params.radius(out.n + 2) >= K_radius) ++out.n;

  const auto terms = degiorgi::evaluate_Y_terms(fields, params, t, out.n);
  out.c1 = std::pow(params.C2, 1.0 - params.k) * std::pow(params.S, params.k * (1.0 + params.j));
  const double kj = params.k * params.j;
  out.rhs = out.c1 * std::pow(t, 1.0 - (1.0 + params.j) * params.k) *
            std::pow(terms.sup_H + terms.grad_G, 1.0 + kj);

  const Trajectory& traj = fields.trajectory();
  const auto& geo = traj.geometry;
  std::vector<double> times;
  std::vector<double> mass;
  auto add = [&](double time, const std::vector<double>& G) {
    std::vector<double> f(G.size(), 0.0);
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (geo.distance(i, 0.0) <= K_radius) f[i] = G[i] * G[i];
    }
    times.push_back(time);
    mass.push_back(solver::integrate(geo, f));
  };
  const double snap_tol = 1e-12 * std::max(traj.final_time(), 1.0);
  for (std::size_t k = 0; k < traj.times.size() && traj.times[k] <= t + snap_tol; ++k) {
    add(traj.times[k], fields.G()[k]);
  }
  if (times.back() < t - snap_tol) add(t, fields.at(t).second);
  out.lhs = solver::time_trapezoid(times, mass);
  return out;
}

EnergyAudit energy_audit(const Trajectory& trajectory, double t_start) {
  const auto& phi = trajectory.config.phi;
  if (phi.sup > 0.0 && phi.settles_at > t_start) {
    std::ostringstream msg;
    msg << "boundary data still ramping until t = " << phi.settles_at << " > t_start = " << t_start;
    throw Error(ErrorCode::RampActive, msg.str());
  }
  const auto& geo = trajectory.geometry;
  const auto& times = trajectory.times;
  const auto& snaps = trajectory.snapshots;
  const double eps = trajectory.epsilon();

  std::size_t first = 0;
  while (first + 1 < times.size() && times[first] < t_start - 1e-12) ++first;

  EnergyAudit out;
  std::vector<double> integrand(geo.size());
  for (std::size_t k = first; k + 1 < times.size(); ++k) {
    const double dt = times[k + 1] - times[k];
    for (std::size_t i = 0; i < geo.size(); ++i) {
      const double rate = (snaps[k + 1][i] - snaps[k][i]) / dt;
      integrand[i] = rate * rate / trajectory.model.coefficient(snaps[k][i], eps);
    }
    out.dissipation += dt * solver::integrate(geo, integrand);
  }
  out.final_energy = 0.5 * solver::gradient_sq_integral(geo, snaps.back());
  out.initial_energy = 0.5 * solver::gradient_sq_integral(geo, snaps[first]);
  const double balance = out.dissipation + out.final_energy - out.initial_energy;
  out.residual =
      std::abs(balance) / std::max(out.initial_energy, std::numeric_limits<double>::min());
  return out;
}

double energy_residual(const Trajectory& trajectory, double t_start) {
  return energy_audit(trajectory, t_start).residual;
}

GradGResult grad_G_check(const ExcessFields& fields, const std::function<double(double)>& theta) {
  const Trajectory& traj = fields.trajectory();
  const auto& geo = traj.geometry;
  const std::size_t n = geo.size();
  std::vector<double> th(n);
  for (std::size_t i = 0; i < n; ++i) th[i] = theta(geo.distance(i, 0.0));
  const auto dth = solver::cell_gradients(geo, th);
  const auto& cw = geo.cell_weights();

  GradGResult out;
  std::vector<double> energy, cut;
  std::vector<double> prod(n);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& G = fields.G()[k];
    for (std::size_t i = 0; i < n; ++i) prod[i] = th[i] * G[i];
    energy.push_back(solver::gradient_sq_integral(geo, prod));
    double c = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      c += cw[i] * dth[i] * dth[i] * 0.5 * (G[i] * G[i] + G[i + 1] * G[i + 1]);
    }
    cut.push_back(c);
  }
  out.lhs = solver::time_trapezoid(traj.times, energy);
  out.rhs_cutoff = solver::time_trapezoid(traj.times, cut);
  const auto& G0 = fields.G().front();
  for (std::size_t i = 0; i < n; ++i) prod[i] = th[i] * th[i] * G0[i] * G0[i];
  out.rhs_initial = solver::integrate(geo, prod);
  const double rhs = out.rhs();
  if (out.lhs == 0.0) {
    out.c_min = 0.0;
  } else {
    out.c_min = rhs > 0.0 ? out.lhs / rhs : std::numeric_limits<double>::infinity();
  }
  return out;
}

double hfp_deviation(const ConstitutiveBundle& bundle, const std::vector<double>& samples) {
  double worst = 0.0;
  for (double s : samples) {
    const auto v = bundle.at(s);
    worst = std::max(worst, std::abs(v.h / v.F * v.P - 1.0));
  }
  return worst;
}

}  // namespace degenlab::estimates
