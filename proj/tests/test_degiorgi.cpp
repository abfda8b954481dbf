#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "degenlab/bundle.hpp"
#include "degenlab/degiorgi.hpp"
#include "degenlab/error.hpp"
#include "degenlab/solver.hpp"

using namespace degenlab;
using namespace degenlab::degiorgi;

namespace {

std::shared_ptr<const ConstitutiveBundle> power_one() {
  static const auto b = std::make_shared<const ConstitutiveBundle>(
      constitutive::build_bundle(constitutive::DegeneracyProfile::power(1.0), 1.0));
  return b;
}

solver::Trajectory bump_run(double eps, double T = 0.5, bool heat = false) {
  solver::SolverConfig c;
  c.epsilon = eps;
  c.T = T;
  c.g = solver::cosine_bump(0.7, 0.1, 0.5);
  const auto model = heat ? solver::DiffusionModel::calibration(1.0)
                          : solver::DiffusionModel::degenerate(power_one());
  return solver::solve(model, solver::Geometry::radial(3, 1.0, 100), c);
}

solver::Trajectory flat_run() {
  solver::SolverConfig c;
  c.T = 0.5;
  return solver::solve(solver::DiffusionModel::degenerate(power_one()),
                       solver::Geometry::radial(3, 1.0, 60), c);
}

}  // namespace

TEST(Radii, Examples) {
  EXPECT_DOUBLE_EQ(radius(3.0, 1.0, 0), 1.0);
  EXPECT_NEAR(radius(3.0, 1.0, 1), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(limit_radius(3.0, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(radius(3.0, 1.0, 200), 0.5, 1e-15);
  EXPECT_NEAR(b_for_radii(0.5, 0.25), 3.0, 1e-14);
}

TEST(Radii, Telescoping) {
  for (double b : {2.5, 3.0, 7.0}) {
    for (int n = 0; n <= 64; ++n) {
      EXPECT_NEAR(radius(b, 0.8, n) - radius(b, 0.8, n + 1), 0.8 * std::pow(b, -(n + 1)), 1e-15)
          << b << " " << n;
    }
  }
}

TEST(Radii, BadB) {
  for (double b : {2.0, 1.5, -1.0}) {
    try {
      radius(b, 1.0, 1);
      FAIL() << b;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadB);
    }
  }
}

TEST(Cutoff, MidpointAndSupport) {
  EXPECT_NEAR(cutoff(5.0 / 6.0, 0, 3.0, 1.0), 0.5, 1e-14);
  EXPECT_EQ(cutoff(0.6, 0, 3.0, 1.0), 1.0);
  EXPECT_EQ(cutoff(1.2, 0, 3.0, 1.0), 0.0);
}

TEST(Cutoff, LipschitzBound) {
  const double b = 3.0, R = 0.5;
  for (int n = 0; n < 6; ++n) {
    const int m = 4000;
    double slope = 0.0;
    for (int i = 0; i < m; ++i) {
      const double x0 = R * i / m, x1 = R * (i + 1) / m;
      slope = std::max(slope, std::abs(cutoff(x1, n, b, R) - cutoff(x0, n, b, R)) / (x1 - x0));
    }
    EXPECT_LE(slope, std::pow(b, n + 1) / R * (1.0 + 1e-9)) << n;
  }
}

TEST(Sobolev, SharpConstant) {
  for (int N : {3, 4, 7}) {
    const double oracle = 1.0 / (std::numbers::pi * N * (N - 2)) *
                          std::pow(std::tgamma(N) / std::tgamma(N / 2.0), 2.0 / N);
    EXPECT_NEAR(sobolev_constant(N), oracle, 1e-14);
  }
  EXPECT_NEAR(sobolev_constant(3), 0.18255157148718099, 1e-15);
  try {
    sobolev_constant(2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionUnsupported);
  }
}

TEST(Exponents, ThreeAndFour) {
  const auto p3 = exponents(3, 1.0, 3.0, 0.5, 1.0);
  EXPECT_DOUBLE_EQ(p3.j, 2.0);
  EXPECT_NEAR(p3.k, 0.2, 1e-15);
  EXPECT_NEAR(p3.gamma, 1.0, 1e-14);
  const auto p4 = exponents(4, 1.0, 3.0, 0.5, 1.0);
  EXPECT_DOUBLE_EQ(p4.j, 1.0);
  EXPECT_NEAR(p4.k, 1.0 / 3.0, 1e-15);
}

TEST(Exponents, GammaIdentitySweep) {
  for (int N = 3; N <= 8; ++N) {
    for (int i = 1; i < 20; ++i) {
      const double lambda = 2.0 * i / 20.0;
      EXPECT_NEAR(exponents(N, lambda, 3.0, 0.5, 1.0).gamma, lambda / (2.0 - lambda),
                  1e-12 * (1.0 + lambda / (2.0 - lambda)));
    }
  }
}

TEST(Exponents, LambdaNearTwo) {
  const auto p = exponents(3, 2.0 - 1e-9, 3.0, 0.5, 1.0);
  EXPECT_LT(p.k, 1e-8);
  EXPECT_GT(p.gamma, 1e8);
}

TEST(Exponents, ConstantAndThreshold) {
  const auto p = exponents(3, 1.0, 3.0, 0.5, 1.0);
  const double S = sobolev_constant(3);
  const double D = 81.0 / 0.25 * 3.0 * std::pow(S, 0.6);
  EXPECT_NEAR(p.D / D, 1.0, 1e-13);
  EXPECT_NEAR(p.threshold / (std::pow(D, -2.5) * std::pow(3.0, -12.5)), 1.0, 1e-12);
  // The threshold is the lemma's theta_L with c = D, b_L = b^2, eps = kj.
  EXPECT_NEAR(ladyzhenskaya(0.0, p.D, 9.0, 0.4, 1).threshold / p.threshold, 1.0, 1e-12);
}

TEST(Exponents, DimensionTwoUnsupported) {
  try {
    exponents(2, 1.0, 3.0, 0.5, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionUnsupported);
  }
}

TEST(Ladyzhenskaya, ZeroStart) {
  const auto r = ladyzhenskaya(0.0, 2.0, 3.0, 0.5, 10);
  for (double y : r.sequence) EXPECT_EQ(y, 0.0);
  EXPECT_TRUE(r.converges);
}

TEST(Ladyzhenskaya, UnitExample) {
  const auto r = ladyzhenskaya(0.5, 1.0, 2.0, 1.0, 5);
  EXPECT_DOUBLE_EQ(r.threshold, 0.5);
  EXPECT_TRUE(r.converges);
  EXPECT_DOUBLE_EQ(r.sequence[1], 0.25);
  EXPECT_DOUBLE_EQ(r.decay_bound[1], 0.25);
  for (double d : r.log_deviation) EXPECT_LE(d, 0.0);
}

TEST(Ladyzhenskaya, DivergentExample) {
  const auto r = ladyzhenskaya(1.0, 1.0, 2.0, 1.0, 5);
  EXPECT_FALSE(r.converges);
  EXPECT_DOUBLE_EQ(r.sequence[1], 1.0);
  EXPECT_DOUBLE_EQ(r.sequence[2], 2.0);
  EXPECT_GT(r.sequence[5], 1e3);
}

TEST(Ladyzhenskaya, ExplicitBoundDominatesSequence) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double c = 0.1 + 5.0 * u(rng), b = 1.0 + 4.0 * u(rng), eps = 0.1 + u(rng);
    const auto r = ladyzhenskaya(0.3, c, b, eps, 12);
    for (std::size_t n = 0; n < r.sequence.size(); ++n) {
      if (!std::isfinite(r.bound[n])) continue;
      EXPECT_LE(r.sequence[n], r.bound[n] * (1.0 + 1e-9));
    }
  }
}

TEST(Ladyzhenskaya, BadParams) {
  for (auto args : {std::array<double, 4>{1.0, 0.0, 2.0, 1.0}, std::array<double, 4>{1.0, 1.0, 0.5, 1.0},
                    std::array<double, 4>{1.0, 1.0, 2.0, 0.0}, std::array<double, 4>{-1.0, 1.0, 2.0, 1.0}}) {
    try {
      ladyzhenskaya(args[0], args[1], args[2], args[3], 3);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadParams);
    }
  }
  EXPECT_NO_THROW(ladyzhenskaya(0.1, 1.0, 1.0, 1.0, 3));
}

TEST(Recursion, TrivialLists) {
  const auto p = exponents(3, 1.0, 3.0, 0.5, 1.0);
  for (double m : check_recursion({0.0, 0.0, 0.0}, p)) EXPECT_EQ(m, 0.0);
  EXPECT_TRUE(check_recursion({1.0}, p).empty());
  EXPECT_EQ(check_recursion({1.0, 2.0, 3.0}, p).size(), 2u);
}

TEST(EvaluateY, FlatRunIsZero) {
  const auto traj = flat_run();
  const auto p = params_for_radii(3, 1.0, 0.5, 0.25, 1.0);
  const ExcessFields fields(traj, *power_one());
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(evaluate_Y(fields, p, 0.5, n), 0.0);
}

TEST(EvaluateY, SupTermNonIncreasingInN) {
  // The gradient term is not monotone in n: |grad theta_n| grows like b^n on
  // the ramp, so only the sup term inherits the nesting of the cutoffs.
  const auto traj = bump_run(1e-2, 1.0);
  const auto p = params_for_radii(3, 1.0, 0.5, 0.25, 1.0);
  const ExcessFields fields(traj, *power_one());
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= 6; ++n) {
    const auto y = evaluate_Y_terms(fields, p, 1.0, n);
    EXPECT_LE(y.sup_H, prev) << n;
    EXPECT_GE(y.grad_G, 0.0);
    EXPECT_NEAR(y.value, y.sup_H + y.grad_G, 1e-15 * y.value);  // gamma = 1, T' = 1
    prev = y.sup_H;
  }
  EXPECT_GT(evaluate_Y(fields, p, 1.0, 0), 0.0);
}

TEST(EvaluateY, NeedsEnoughSnapshots) {
  const auto traj = bump_run(1e-2);
  const auto p = params_for_radii(3, 1.0, 0.5, 0.25, 1.0);
  try {
    evaluate_Y(traj, *power_one(), p, 3.0 * traj.dt, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientSnapshots);
  }
}

TEST(EvaluateY, TStarBelowThreshold) {
  const auto traj = bump_run(1e-4, 1.0);
  const auto p = params_for_radii(3, 1.0, 0.5, 0.25, power_one()->C1());
  const ExcessFields fields(traj, *power_one());
  const auto T_star = find_T_star(fields, p);
  ASSERT_TRUE(T_star.has_value());
  EXPECT_GT(*T_star, 0.0);
  EXPECT_LE(evaluate_Y(fields, p, *T_star, 0), p.threshold * (1.0 + 1e-9));
}

TEST(Front, FlatRunIsFullyLocalized) {
  const auto traj = flat_run();
  const auto f = front_trace(traj, 0.0, 1e-6);
  for (double r : f.front_radius) EXPECT_DOUBLE_EQ(r, 1.0);
  EXPECT_DOUBLE_EQ(f.localization_time(0.25), 0.5);
  EXPECT_DOUBLE_EQ(f.localization_time(0.9), 0.5);
}

TEST(Front, CenterNotClean) {
  solver::SolverConfig c;
  c.T = 0.1;
  c.g = solver::cosine_bump(0.0, 0.3, 0.2);
  const auto traj = solver::solve(solver::DiffusionModel::calibration(1.0),
                                  solver::Geometry::radial(3, 1.0, 40), c);
  try {
    front_trace(traj, 0.0, 1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CenterNotClean);
  }
}

TEST(Front, HeatModeLeaksImmediately) {
  const auto traj = bump_run(1e-3, 0.5, true);
  const auto f = front_trace(traj, 0.0, 1e-6);
  EXPECT_LT(f.localization_time(0.25), traj.dt);
}

TEST(Front, DegenerateRunLocalizes) {
  const auto traj = bump_run(1e-3, 0.5);
  const auto f = front_trace(traj, 0.0, 1e-6);
  EXPECT_GT(f.localization_time(0.25), 0.0);
}

TEST(Front, MonotoneInRadiusAndTolerance) {
  const auto traj = bump_run(1e-2, 0.5);
  const auto f = front_trace(traj, 0.0, 1e-6);
  double prev = std::numeric_limits<double>::infinity();
  for (double Rp : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double t = f.localization_time(Rp);
    EXPECT_LE(t, prev) << Rp;
    prev = t;
  }
  // A looser tolerance can only delay the first node that counts as reached.
  prev = 0.0;
  for (double tol : {1e-8, 1e-6, 1e-4, 1e-2}) {
    const double t = front_trace(traj, 0.0, tol).localization_time(0.25);
    EXPECT_GE(t, prev) << tol;
    prev = t;
  }
}
