#pragma once

#include <optional>
#include <vector>

#include "degenlab/bundle.hpp"
#include "degenlab/solver.hpp"

namespace degenlab::degiorgi {

using constitutive::ConstitutiveBundle;
using solver::Trajectory;

/// R_n = R (b - 2 + b^{-n}) / (b - 1). Throws BadB for b <= 2.
double radius(double b, double R, int n);
/// lim R_n = R (b - 2) / (b - 1).
double limit_radius(double b, double R);
/// The b > 2 with (b - 2)/(b - 1) = Rprime / R.
double b_for_radii(double R, double Rprime);

/// Piecewise-linear cutoff of the distance d = |x - x0|:
/// 1 on [0, R_{n+1}], 0 beyond R_n, linear in between.
double cutoff(double distance, int n, double b, double R);

/// Sharp constant S in ||psi||^2_{L^{2N/(N-2)}} <= S ||grad psi||^2_{L^2}, N >= 3.
double sobolev_constant(int N);

struct DeGiorgiParams {
  int N = 3;
  double b = 3.0;
  double R = 0.5;
  double Rprime = 0.25;
  double lambda = 1.0;
  double j = 0.0;
  double k = 0.0;
  double gamma = 0.0;
  double S = 0.0;
  double C1 = 1.0;
  double C2 = 1.0;
  double D = 0.0;
  double threshold = 0.0;

  double radius(int n) const { return degiorgi::radius(b, R, n); }
  double cutoff(double distance, int n) const { return degiorgi::cutoff(distance, n, b, R); }
};

/// j = 2/(N-2), k = (2-lambda)/(2+2j-lambda), gamma = (1-(1+j)k)/(kj),
/// D = (b^4/R^2)(2 C1^2 + 1) C2^{1-k} S^{k(1+j)}, threshold = D^{-1/(kj)} b^{-2/(kj)^2}.
/// S <= 0 selects sobolev_constant(N). Throws DimensionUnsupported for N <= 2.
DeGiorgiParams exponents(int N, double lambda, double b, double R, double C1, double S = 0.0);

/// Same, with b derived from R and Rprime.
DeGiorgiParams params_for_radii(int N, double lambda, double R, double Rprime, double C1,
                                double S = 0.0);

/// H(u - eps) and G(u - eps) (or of raw u) at every stored snapshot, computed
/// once and shared by all Y_n and T' evaluations on a trajectory.
class ExcessFields {
 public:
  ExcessFields(const Trajectory& trajectory, const ConstitutiveBundle& bundle, bool excess = true);

  const Trajectory& trajectory() const noexcept { return *trajectory_; }
  const std::vector<std::vector<double>>& H() const noexcept { return H_; }
  const std::vector<std::vector<double>>& G() const noexcept { return G_; }
  /// H and G of the field interpolated at time t.
  std::pair<std::vector<double>, std::vector<double>> at(double t) const;

 private:
  double argument(double u) const;

  const Trajectory* trajectory_;
  const ConstitutiveBundle* bundle_;
  bool excess_;
  std::vector<std::vector<double>> H_;
  std::vector<std::vector<double>> G_;
};

/// Minimum number of snapshots in [0, T'] for evaluate_Y.
inline constexpr std::size_t kMinSnapshots = 8;

struct YTerms {
  double sup_H = 0.0;      ///< sup_t int theta_n^2 H
  double grad_G = 0.0;     ///< int_0^T' int |grad(theta_n G)|^2
  double value = 0.0;      ///< T'^gamma (sup_H + grad_G)
};

/// Y_n(T'). Throws InsufficientSnapshots with fewer than kMinSnapshots
/// snapshots in [0, T'], InvalidArgument for T' beyond the run.
YTerms evaluate_Y_terms(const ExcessFields& fields, const DeGiorgiParams& params, double Tprime,
                        int n);
double evaluate_Y(const ExcessFields& fields, const DeGiorgiParams& params, double Tprime, int n);
double evaluate_Y(const Trajectory& trajectory, const ConstitutiveBundle& bundle,
                  const DeGiorgiParams& params, double Tprime, int n);

/// Largest T' (by bisection) with Y_0(T') <= threshold, searched above the
/// earliest T' with enough snapshots; nullopt if even that T' fails.
std::optional<double> find_T_star(const ExcessFields& fields, const DeGiorgiParams& params,
                                  double rel_tol = 1e-6);

/// margins[n-1] = D (b^2)^{n-1} Y_{n-1}^{1+kj} - Y_n for n = 1..size-1.
std::vector<double> check_recursion(const std::vector<double>& Y, const DeGiorgiParams& params);
/// The right-hand side D (b^2)^{n-1} Y_{n-1}^{1+kj} for each margin.
std::vector<double> recursion_rhs(const std::vector<double>& Y, const DeGiorgiParams& params);

struct LadyzhenskayaResult {
  double threshold = 0.0;               ///< c^{-1/eps} b^{-1/eps^2}
  bool converges = false;               ///< y0 <= threshold and b > 1
  std::vector<double> sequence;         ///< y_{n+1} = c b^n y_n^{1+eps}
  std::vector<double> log_deviation;    ///< ln y_n - ln(threshold b^{-n/eps}), exact recurrence
  std::vector<double> bound;            ///< explicit bound on y_n
  std::vector<double> decay_bound;      ///< threshold b^{-n/eps}
};

/// Sequences for y_{n+1} <= c b^n y_n^{1+eps}, n = 0..n_max. Computed in the
/// log domain: the deviation from the decay curve obeys d_{n+1} = (1+eps) d_n,
/// so its sign is exact. Throws BadParams for c, eps <= 0, b < 1 or y0 < 0.
LadyzhenskayaResult ladyzhenskaya(double y0, double c, double b, double eps, int n_max);

struct FrontTrace {
  double tol = 0.0;
  double x0 = 0.0;
  std::vector<double> times;
  /// Distance from x0 to the nearest node with excess above tol (the domain
  /// radius when there is none).
  std::vector<double> front_radius;

  /// sup{t : front_radius(s) >= Rprime for every snapshot s <= t}; 0 if the
  /// ball is already reached at the first step after t = 0.
  double localization_time(double Rprime) const;
};

/// Throws CenterNotClean if u(x0, 0) > eps + tol.
FrontTrace front_trace(const Trajectory& trajectory, double x0, double tol);

}  // namespace degenlab::degiorgi
