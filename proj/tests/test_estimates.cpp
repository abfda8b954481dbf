#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "degenlab/bundle.hpp"
#include "degenlab/degiorgi.hpp"
#include "degenlab/error.hpp"
#include "degenlab/estimates.hpp"

using namespace degenlab;
using namespace degenlab::estimates;
using constitutive::DegeneracyProfile;

namespace {

std::shared_ptr<const ConstitutiveBundle> power_one() {
  static const auto b = std::make_shared<const ConstitutiveBundle>(
      constitutive::build_bundle(DegeneracyProfile::power(1.0), 1.0));
  return b;
}

solver::Trajectory bump_run(double eps, double T = 1.0) {
  solver::SolverConfig c;
  c.epsilon = eps;
  c.T = T;
  c.g = solver::cosine_bump(0.7, 0.1, 0.5);
  return solver::solve(solver::DiffusionModel::degenerate(power_one()),
                       solver::Geometry::radial(3, 1.0, 100), c);
}

solver::Trajectory heat_run(int m, double dt) {
  const double pi = std::numbers::pi;
  solver::SolverConfig c;
  c.dt = dt;
  c.T = 0.5;
  c.g = solver::sine_mode(pi);
  return solver::solve(solver::DiffusionModel::calibration(1.0), solver::Geometry::interval(pi, m), c);
}

}  // namespace

TEST(Lemma1, WorkedExample) {
  PointSample s;
  s.u = 2.0;  // clipped to M = 1
  s.grad_u = {1.0};
  s.theta = 1.0;
  s.grad_theta = {0.0};
  EXPECT_NEAR(lemma1_gap(*power_one(), s), 0.5, 1e-9);
}

TEST(Lemma1, DimensionMismatch) {
  PointSample s;
  s.grad_u = {1.0, 0.0};
  s.grad_theta = {0.0};
  EXPECT_THROW(lemma1_gap(*power_one(), s), Error);
}

TEST(Lemma1, RandomSamplesNonNegative) {
  for (const auto& p : {DegeneracyProfile::power(1.0), DegeneracyProfile::power(2.0),
                        DegeneracyProfile::exp_inverse(1.0)}) {
    const auto b = constitutive::build_bundle(p, 1.0);
    const auto r = lemma1_sweep(b, 3000, 3, 11);
    EXPECT_EQ(r.samples, 3000u);
    EXPECT_GE(r.min_gap, 0.0) << p.label();
  }
}

TEST(Lemma1, SweepIsDeterministic) {
  const auto a = lemma1_sweep(*power_one(), 500, 2, 3);
  const auto b = lemma1_sweep(*power_one(), 500, 2, 3);
  EXPECT_EQ(a.min_gap, b.min_gap);
}

TEST(HFP, IdentityOnProbeGrid) {
  for (const auto& p : {DegeneracyProfile::power(0.5), DegeneracyProfile::exp_inverse(1.0)}) {
    const auto b = constitutive::build_bundle(p, p.kind() == constitutive::ProfileKind::Power ? 0.5 : 1.0);
    EXPECT_LE(hfp_deviation(b, b.probe_grid(200)), 1e-12) << p.label();
  }
}

TEST(Energy, ConstantStateIsExactlyZero) {
  solver::SolverConfig c;
  c.T = 0.5;
  const auto traj = solver::solve(solver::DiffusionModel::degenerate(power_one()),
                                  solver::Geometry::radial(3, 1.0, 50), c);
  const auto a = energy_audit(traj);
  EXPECT_EQ(a.residual, 0.0);
  EXPECT_EQ(a.dissipation, 0.0);
}

TEST(Energy, HeatResidualShrinksUnderRefinement) {
  double prev = std::numeric_limits<double>::infinity();
  for (int level = 0; level < 3; ++level) {
    const int m = 32 << level;
    const double r = energy_residual(heat_run(m, 4e-3 / (1 << (2 * level))));
    EXPECT_LT(r, prev) << level;
    prev = r;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(Energy, RampStillActive) {
  solver::SolverConfig c;
  c.T = 0.5;
  c.phi = solver::boundary_ramp(0.2, 0.1);
  const auto traj = solver::solve(solver::DiffusionModel::degenerate(power_one()),
                                  solver::Geometry::radial(3, 1.0, 50), c);
  try {
    energy_audit(traj, 0.05);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RampActive);
  }
  EXPECT_NO_THROW(energy_audit(traj, 0.1));
}

TEST(Lemma2, BumpRunSatisfiesBound) {
  const auto traj = bump_run(1e-2);
  const auto p = degiorgi::params_for_radii(3, 1.0, 0.5, 0.25, power_one()->C1());
  const degiorgi::ExcessFields fields(traj, *power_one());
  const auto r = lemma2_check(fields, p, p.radius(1), 1.0);
  EXPECT_GT(r.lhs, 0.0);
  EXPECT_LE(r.lhs, r.rhs);
  EXPECT_EQ(r.n, 0);
}

TEST(Lemma2, KBeyondFirstRadius) {
  const auto traj = bump_run(1e-2, 0.2);
  const auto p = degiorgi::params_for_radii(3, 1.0, 0.5, 0.25, 1.0);
  const degiorgi::ExcessFields fields(traj, *power_one());
  EXPECT_THROW(lemma2_check(fields, p, 0.45, 0.2), Error);
}

TEST(GradG, FlatRun) {
  solver::SolverConfig c;
  c.T = 0.5;
  const auto traj = solver::solve(solver::DiffusionModel::degenerate(power_one()),
                                  solver::Geometry::radial(3, 1.0, 50), c);
  const degiorgi::ExcessFields fields(traj, *power_one());
  const auto r = grad_G_check(fields, [](double d) { return d < 0.5 ? 1.0 : 0.0; });
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.c_min, 0.0);
}

TEST(GradG, HomogeneousInCutoff) {
  const auto traj = bump_run(1e-2);
  const auto p = degiorgi::params_for_radii(3, 1.0, 0.5, 0.25, 1.0);
  const degiorgi::ExcessFields fields(traj, *power_one());
  const auto full = grad_G_check(fields, [&](double d) { return p.cutoff(d, 0); });
  const auto half = grad_G_check(fields, [&](double d) { return 0.5 * p.cutoff(d, 0); });
  EXPECT_GT(full.lhs, 0.0);
  EXPECT_TRUE(std::isfinite(full.c_min));
  EXPECT_NEAR(half.lhs / full.lhs, 0.25, 1e-12);
  EXPECT_NEAR(half.rhs() / full.rhs(), 0.25, 1e-12);
  EXPECT_NEAR(half.c_min / full.c_min, 1.0, 1e-12);
}
