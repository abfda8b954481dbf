#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "degenlab/bundle.hpp"
#include "degenlab/geometry.hpp"

namespace degenlab::solver {

using constitutive::ConstitutiveBundle;

enum class Scheme { Implicit, Explicit };

std::string_view to_string(Scheme scheme) noexcept;

/// The frozen coefficient c(u) of u_t = c(u) Delta u: (F(u) + eps) / h(u)
/// for a constitutive bundle, or a constant D in calibration (heat) mode.
class DiffusionModel {
 public:
  static DiffusionModel degenerate(std::shared_ptr<const ConstitutiveBundle> bundle);
  static DiffusionModel calibration(double diffusivity);

  bool is_calibration() const noexcept { return !bundle_; }
  const ConstitutiveBundle* bundle() const noexcept { return bundle_.get(); }
  double diffusivity() const noexcept { return D_; }
  /// Largest admissible value of u (M of the profile; +inf in calibration mode).
  double upper() const noexcept;
  double coefficient(double u, double epsilon) const;
  std::string label() const;

 private:
  std::shared_ptr<const ConstitutiveBundle> bundle_;
  double D_ = 1.0;
};

/// Non-negative excess function with a description for reports. For
/// boundary data the argument is time; `settles_at` is the time after which
/// the value no longer changes (0 for constant data).
struct Excess {
  std::function<double(double)> fn;
  std::string description = "zero";
  double sup = 0.0;
  double settles_at = 0.0;

  double operator()(double x) const { return fn ? fn(x) : 0.0; }
};

Excess zero_excess();
/// height * cos^2(pi (x - center) / (2 half_width)) on |x - center| < half_width.
Excess cosine_bump(double center, double half_width, double height);
/// amplitude * sin(pi x / L).
Excess sine_mode(double L, double amplitude = 1.0);
/// phi_max * min(t / t_ramp, 1).
Excess boundary_ramp(double phi_max, double t_ramp);

struct SolverConfig {
  double epsilon = 1e-3;
  Scheme scheme = Scheme::Implicit;
  double dt = 0.0;  ///< 0 selects the automatic rule
  double T = 1.0;
  Excess g = zero_excess();
  Excess phi = zero_excess();
  int snapshot_stride = 1;
  /// Slack allowed outside [eps, eps + bound] before a step counts as a blowup.
  double blowup_tol = 1e-9;
};

struct Trajectory {
  Geometry geometry;
  DiffusionModel model;
  SolverConfig config;  ///< echo, with dt resolved
  std::vector<double> times;
  std::vector<std::vector<double>> snapshots;
  std::vector<double> step_min;  ///< min over nodes after each step (index 0 = initial state)
  std::vector<double> step_max;
  std::size_t steps = 0;
  double dt = 0.0;
  double bound = 0.0;  ///< max(sup g, sup phi) over the run
  /// Largest excursion of any step outside [eps, eps + bound]; 0 when the
  /// discrete maximum principle holds exactly.
  double max_principle_violation = 0.0;

  double epsilon() const noexcept { return config.epsilon; }
  double final_time() const noexcept { return times.empty() ? 0.0 : times.back(); }
  bool max_principle_holds(double tol = 1e-12) const noexcept {
    return max_principle_violation <= tol * (1.0 + bound);
  }
  /// Nodal field at time t, linear in time between stored snapshots.
  std::vector<double> at(double t) const;
};

/// dt actually used by solve: the requested value, or dx (implicit) /
/// 0.9 dx^2 / (2 max(N,1) c_max) (explicit), shrunk so that T is hit exactly.
double resolve_dt(const DiffusionModel& model, const Geometry& geometry, const SolverConfig& config);

/// Semi-implicit (or explicit) time stepping of u_t = c(u) Delta u with
/// u(0) = eps + g, Dirichlet data eps + phi(t), c frozen at the old level.
Trajectory solve(const DiffusionModel& model, const Geometry& geometry, const SolverConfig& config);

struct SweepResult {
  std::vector<Trajectory> runs;
  /// max over snapshots and nodes of |u_k - u_{k+1}| for consecutive eps.
  std::vector<double> sup_differences;
  /// min over snapshots and nodes of u_k + (eps_k - eps_{k+1}) - u_{k+1};
  /// non-negative when the comparison property holds.
  std::vector<double> comparison_margins;
};

/// Runs solve for each eps (strictly decreasing) on a shared grid and time
/// step, concurrently. Errors are rethrown tagged with the failing eps.
SweepResult epsilon_sweep(const DiffusionModel& model, const Geometry& geometry,
                          const SolverConfig& base, const std::vector<double>& eps_list);

}  // namespace degenlab::solver
