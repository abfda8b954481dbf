#include "degenlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "degenlab/error.hpp"

namespace degenlab::solver {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Thomas algorithm; a = sub-diagonal, b = diagonal, c = super-diagonal.
// Overwrites d with the solution. The matrices built here are strictly
// diagonally dominant M-matrices, so no pivoting is needed.
void solve_tridiagonal(const std::vector<double>& a, const std::vector<double>& b,
                       const std::vector<double>& c, std::vector<double>& d,
                       std::vector<double>& work) {
  const std::size_t n = d.size();
  work.resize(n);
  double denom = b[0];
  work[0] = c[0] / denom;
  d[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = b[i] - a[i] * work[i - 1];
    work[i] = c[i] / denom;
    d[i] = (d[i] - a[i] * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= work[i] * d[i + 1];
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

void validate(const DiffusionModel& model, const SolverConfig& config) {
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  }
  if (!(config.T > 0.0) || !std::isfinite(config.T)) {
    throw Error(ErrorCode::InvalidArgument, "final time T must be positive");
  }
  if (config.dt < 0.0 || !std::isfinite(config.dt)) {
    throw Error(ErrorCode::InvalidArgument, "dt must be positive (or 0 for auto)");
  }
  if (config.snapshot_stride < 1) {
    throw Error(ErrorCode::InvalidArgument, "snapshot_stride must be at least 1");
  }
  if (std::abs(config.phi(0.0)) > 0.0) {
    throw Error(ErrorCode::InvalidArgument, "boundary excess must vanish at t = 0");
  }
  const double bound = std::max(config.g.sup, config.phi.sup);
  if (config.epsilon + bound > model.upper()) {
    std::ostringstream msg;
    msg << "eps + max excess = " << config.epsilon + bound << " exceeds the profile domain M = "
        << model.upper();
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

double max_coefficient(const DiffusionModel& model, const SolverConfig& config) {
  if (model.is_calibration()) return model.diffusivity();
  const double lo = config.epsilon;
  const double hi = config.epsilon + std::max(config.g.sup, config.phi.sup);
  double c_max = 0.0;
  constexpr int kSamples = 64;
  for (int k = 0; k <= kSamples; ++k) {
    c_max = std::max(c_max, model.coefficient(lo + (hi - lo) * k / kSamples, config.epsilon));
  }
  return c_max;
}

}  // namespace

std::string_view to_string(Scheme scheme) noexcept {
  return scheme == Scheme::Implicit ? "implicit" : "explicit";
}

DiffusionModel DiffusionModel::degenerate(std::shared_ptr<const ConstitutiveBundle> bundle) {
  if (!bundle) throw Error(ErrorCode::InvalidArgument, "null bundle");
  DiffusionModel m;
  m.bundle_ = std::move(bundle);
  return m;
}

DiffusionModel DiffusionModel::calibration(double diffusivity) {
  if (!(diffusivity > 0.0) || !std::isfinite(diffusivity)) {
    throw Error(ErrorCode::InvalidArgument, "diffusivity must be positive");
  }
  DiffusionModel m;
  m.D_ = diffusivity;
  return m;
}

double DiffusionModel::upper() const noexcept { return bundle_ ? bundle_->upper() : kInf; }

double DiffusionModel::coefficient(double u, double epsilon) const {
  if (!bundle_) return D_;
  const auto v = bundle_->at(u);
  return (v.F + epsilon) / v.h;
}

std::string DiffusionModel::label() const {
  if (!bundle_) return "calibration(D=" + format_double(D_) + ")";
  return std::string(constitutive::to_string(bundle_->profile().kind())) +
         "(Lambda=" + format_double(bundle_->Lambda()) + ")";
}

Excess zero_excess() {
  return {[](double) { return 0.0; }, "zero", 0.0, 0.0};
}

Excess cosine_bump(double center, double half_width, double height) {
  if (!(half_width > 0.0) || !(height >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "bump needs half_width > 0 and height >= 0");
  }
  auto fn = [=](double x) {
    const double z = (x - center) / half_width;
    if (std::abs(z) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * std::numbers::pi * z);
    return height * c * c;
  };
  return {fn,
          "cos2-bump(center=" + format_double(center) + ",half_width=" + format_double(half_width) +
              ",height=" + format_double(height) + ")",
          height, 0.0};
}

Excess sine_mode(double L, double amplitude) {
  if (!(L > 0.0) || !(amplitude >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sine mode needs L > 0 and amplitude >= 0");
  }
  auto fn = [=](double x) { return amplitude * std::sin(std::numbers::pi * x / L); };
  return {fn, "sine(L=" + format_double(L) + ",amplitude=" + format_double(amplitude) + ")",
          amplitude, 0.0};
}

Excess boundary_ramp(double phi_max, double t_ramp) {
  if (!(phi_max >= 0.0) || !(t_ramp > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "ramp needs phi_max >= 0 and t_ramp > 0");
  }
  if (phi_max == 0.0) return zero_excess();
  auto fn = [=](double t) { return phi_max * std::min(std::max(t, 0.0) / t_ramp, 1.0); };
  return {fn, "ramp(phi_max=" + format_double(phi_max) + ",t_ramp=" + format_double(t_ramp) + ")",
          phi_max, t_ramp};
}

std::vector<double> Trajectory::at(double t) const {
  if (times.empty()) throw Error(ErrorCode::InvalidArgument, "empty trajectory");
  if (t <= times.front()) return snapshots.front();
  if (t >= times.back()) return snapshots.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto k = static_cast<std::size_t>(it - times.begin());
  const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
  std::vector<double> out(snapshots[k].size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (1.0 - w) * snapshots[k - 1][i] + w * snapshots[k][i];
  }
  return out;
}

double resolve_dt(const DiffusionModel& model, const Geometry& geometry, const SolverConfig& config) {
  validate(model, config);
  double dt = config.dt;
  if (dt == 0.0) {
    const double dx = geometry.spacing();
    if (config.scheme == Scheme::Implicit) {
      dt = dx;
    } else {
      const double c_max = max_coefficient(model, config);
      dt = 0.9 * dx * dx / (2.0 * std::max(geometry.dimension(), 1) * c_max);
    }
  }
  const double steps = std::ceil(config.T / dt - 1e-9);
  return config.T / std::max(steps, 1.0);
}

Trajectory solve(const DiffusionModel& model, const Geometry& geometry, const SolverConfig& config) {
  const double dt = resolve_dt(model, geometry, config);
  const auto n_steps = static_cast<std::size_t>(std::llround(config.T / dt));
  const double eps = config.epsilon;
  const std::size_t n = geometry.size();
  const auto& x = geometry.nodes();

  Trajectory traj{geometry, model, config, {}, {}, {}, {}, 0, dt, 0.0, 0.0};
  traj.config.dt = dt;

  std::vector<double> u(n);
  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double gi = geometry.is_dirichlet(i) ? config.phi(0.0) : config.g(x[i]);
    if (gi < 0.0) throw Error(ErrorCode::InvalidArgument, "initial excess must be non-negative");
    u[i] = eps + gi;
    bound = std::max(bound, gi);
  }
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double p = config.phi(dt * static_cast<double>(k));
    if (p < 0.0) throw Error(ErrorCode::InvalidArgument, "boundary excess must be non-negative");
    bound = std::max(bound, p);
  }
  traj.bound = bound;

  const double lo_ok = eps - config.blowup_tol;
  const double hi_ok = eps + bound + config.blowup_tol;
  auto record = [&](std::size_t step) {
    const auto [mn, mx] = std::minmax_element(u.begin(), u.end());
    traj.step_min.push_back(*mn);
    traj.step_max.push_back(*mx);
    traj.max_principle_violation =
        std::max({traj.max_principle_violation, eps - *mn, *mx - (eps + bound)});
    if (!(*mn >= lo_ok) || !(*mx <= hi_ok)) {
      std::ostringstream msg;
      msg << "step " << step << ": u in [" << *mn << ", " << *mx << "] leaves [" << eps << ", "
          << eps + bound << "]";
      throw Error(ErrorCode::StepBlowup, msg.str());
    }
    if (step % static_cast<std::size_t>(config.snapshot_stride) == 0 || step == n_steps) {
      traj.times.push_back(dt * static_cast<double>(step));
      traj.snapshots.push_back(u);
    }
  };
  record(0);

  const auto& lo = geometry.lower();
  const auto& di = geometry.diag();
  const auto& up = geometry.upper();
  std::vector<double> c(n), a(n), b(n), sup(n), du(n), work;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double t = dt * static_cast<double>(k);
    const double boundary = eps + config.phi(t);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = geometry.is_dirichlet(i) ? 0.0 : model.coefficient(u[i], eps);
    }
    const auto lap = laplacian_apply(geometry, u);
    if (config.scheme == Scheme::Implicit) {
      // Increment form: (I - dt C L) du = dt C L u, so a constant state stays bit-exact.
      for (std::size_t i = 0; i < n; ++i) {
        if (geometry.is_dirichlet(i)) {
          a[i] = 0.0;
          b[i] = 1.0;
          sup[i] = 0.0;
          du[i] = boundary - u[i];
        } else {
          a[i] = -dt * c[i] * lo[i];
          b[i] = 1.0 - dt * c[i] * di[i];
          sup[i] = -dt * c[i] * up[i];
          du[i] = dt * c[i] * lap[i];
        }
      }
      solve_tridiagonal(a, b, sup, du, work);
      for (std::size_t i = 0; i < n; ++i) u[i] += du[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (geometry.is_dirichlet(i)) {
          u[i] = boundary;
          continue;
        }
        if (dt * c[i] * std::abs(di[i]) > 1.0 + 1e-12) {
          std::ostringstream msg;
          msg << "explicit step " << k << ": dt c |L_ii| = " << dt * c[i] * std::abs(di[i])
              << " > 1 at node " << i;
          throw Error(ErrorCode::CflViolation, msg.str());
        }
        u[i] += dt * c[i] * lap[i];
      }
    }
    ++traj.steps;
    record(k);
  }
  return traj;
}

SweepResult epsilon_sweep(const DiffusionModel& model, const Geometry& geometry,
                          const SolverConfig& base, const std::vector<double>& eps_list) {
  if (eps_list.empty()) throw Error(ErrorCode::InvalidArgument, "empty eps list");
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] > std::numeric_limits<double>::min()) ||
        (k > 0 && !(eps_list[k] < eps_list[k - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "eps list must be strictly decreasing and positive");
    }
  }
  // One time step for every run so snapshots line up; the largest eps has
  // the largest coefficient and hence the tightest explicit bound.
  SolverConfig shared = base;
  shared.epsilon = eps_list.front();
  shared.dt = resolve_dt(model, geometry, shared);

  std::vector<std::future<Trajectory>> jobs;
  jobs.reserve(eps_list.size());
  for (double eps : eps_list) {
    SolverConfig cfg = shared;
    cfg.epsilon = eps;
    jobs.push_back(std::async(std::launch::async, [&model, &geometry, cfg] {
      try {
        return solve(model, geometry, cfg);
      } catch (const Error& e) {
        std::ostringstream msg;
        msg << "eps = " << cfg.epsilon << ": " << e.what();
        throw Error(e.code(), msg.str());
      }
    }));
  }
  SweepResult out;
  for (auto& job : jobs) out.runs.push_back(job.get());

  for (std::size_t k = 0; k + 1 < out.runs.size(); ++k) {
    const Trajectory& hi = out.runs[k];
    const Trajectory& lo = out.runs[k + 1];
    const double shift = hi.epsilon() - lo.epsilon();
    double diff = 0.0;
    double margin = kInf;
    for (std::size_t s = 0; s < hi.snapshots.size(); ++s) {
      for (std::size_t i = 0; i < hi.snapshots[s].size(); ++i) {
        const double d = hi.snapshots[s][i] - lo.snapshots[s][i];
        diff = std::max(diff, std::abs(d));
        margin = std::min(margin, d + shift);
      }
    }
    out.sup_differences.push_back(diff);
    out.comparison_margins.push_back(margin);
  }
  return out;
}

}  // namespace degenlab::solver
