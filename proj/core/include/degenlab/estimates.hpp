#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "degenlab/bundle.hpp"
#include "degenlab/degiorgi.hpp"
#include "degenlab/solver.hpp"

namespace degenlab::estimates {

using constitutive::ConstitutiveBundle;
using degiorgi::DeGiorgiParams;
using degiorgi::ExcessFields;
using solver::Trajectory;

struct PointSample {
  double u = 0.0;
  std::vector<double> grad_u;
  double theta = 1.0;
  std::vector<double> grad_theta;
};

/// grad u . grad(theta^2 F(u)) - [1/2 |grad(theta G(u))|^2 - (2 C1^2 + 1) G(u)^2 |grad theta|^2],
/// all gradients expanded by the chain rule. C1 <= 0 selects the bundle's C1.
double lemma1_gap(const ConstitutiveBundle& bundle, const PointSample& sample, double C1 = 0.0);

struct Lemma1Sweep {
  double min_gap = 0.0;
  std::size_t samples = 0;
  PointSample worst;
};

/// Random samples with u log-uniform on the bundle's probe range, theta in
/// [0, 1] and gradient components uniform in [-1, 1]; deterministic in seed.
Lemma1Sweep lemma1_sweep(const ConstitutiveBundle& bundle, std::size_t count, int dimension,
                         std::uint64_t seed);

struct Lemma2Result {
  double lhs = 0.0;  ///< int_0^t int_K G^2
  double rhs = 0.0;  ///< c1 t^{1-(1+j)k} [sup int theta_n^2 H + int int |grad(theta_n G)|^2]^{1+jk}
  double c1 = 0.0;   ///< C2^{1-k} S^{k(1+j)}
  int n = 0;         ///< cutoff index: the largest n with R_{n+1} >= K_radius
};

/// Throws InsufficientSnapshots as evaluate_Y does, InvalidArgument when no
/// cutoff equals 1 on K.
Lemma2Result lemma2_check(const ExcessFields& fields, const DeGiorgiParams& params,
                          double K_radius, double t);

struct EnergyAudit {
  double dissipation = 0.0;     ///< sum_k dt_k int w(u^k) ((u^{k+1} - u^k)/dt_k)^2
  double final_energy = 0.0;    ///< 1/2 int |grad u(T)|^2
  double initial_energy = 0.0;  ///< 1/2 int |grad u(t_start)|^2
  double residual = 0.0;        ///< |dissipation + final - initial| / max(initial, floor)
};

/// Energy balance over [t_start, T] with weight w = h/(F + eps) (1/D in
/// calibration mode). Throws RampActive when the boundary excess is still
/// changing after t_start.
EnergyAudit energy_audit(const Trajectory& trajectory, double t_start = 0.0);
double energy_residual(const Trajectory& trajectory, double t_start = 0.0);

struct GradGResult {
  double lhs = 0.0;          ///< int_0^T int |grad(theta G)|^2
  double rhs_initial = 0.0;  ///< int theta^2 G(u(0))^2
  double rhs_cutoff = 0.0;   ///< int_0^T int |grad theta|^2 G^2
  double c_min = 0.0;        ///< lhs / (rhs_initial + rhs_cutoff)
  double rhs() const noexcept { return rhs_initial + rhs_cutoff; }
};

/// theta is a function of the distance to the origin of the geometry.
GradGResult grad_G_check(const ExcessFields& fields, const std::function<double(double)>& theta);

/// max |h(s) / F(s) * P(s) - 1| over samples.
double hfp_deviation(const ConstitutiveBundle& bundle, const std::vector<double>& samples);

}  // namespace degenlab::estimates
