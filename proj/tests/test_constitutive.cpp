#include <gtest/gtest.h>

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <limits>

#include "degenlab/admissibility.hpp"
#include "degenlab/bundle.hpp"
#include "degenlab/error.hpp"
#include "degenlab/integral.hpp"
#include "degenlab/limits.hpp"
#include "degenlab/quadrature.hpp"

using namespace degenlab;
using namespace degenlab::constitutive;

namespace {

DegeneracyProfile zeta_one() {
  return DegeneracyProfile::zeta_bounded([](double) { return 1.0; });
}

}  // namespace

TEST(Quadrature, IntegrableEndpointSingularity) {
  const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(Quadrature, SmoothIntegrand) {
  const auto r = quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, std::exp(1.0) - 1.0, 1e-14);
  EXPECT_NEAR(quad::kronrod15([](double x) { return x * x; }, 0.0, 3.0), 9.0, 1e-13);
}

TEST(Quadrature, NonFiniteIntegrandThrows) {
  auto bad = [](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; };
  try {
    quad::integrate(bad, 0.0, 1.0);
    FAIL() << "expected QuadratureDivergent";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuadratureDivergent);
  }
}

TEST(Limits, AitkenRecoversGeometricLimit) {
  const auto s = geometric_sequence(0.1, 0.5, 12);
  const auto est = estimate_limit_at_zero([](double x) { return 2.0 + 3.0 * x; }, s);
  EXPECT_FALSE(est.diverging);
  EXPECT_TRUE(est.supports(2.0));
  EXPECT_FALSE(est.supports(2.01));
}

TEST(Limits, LogGridEndpoints) {
  const auto g = log_grid(1e-6, 1.0, 7);
  ASSERT_EQ(g.size(), 7u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-6);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  EXPECT_NEAR(g[3], 1e-3, 1e-15);
}

TEST(IntegralI, PowerClosedForm) {
  EXPECT_NEAR(eval_I(DegeneracyProfile::power(2.0), 0.1), 50.0, 1e-12);
  EXPECT_NEAR(eval_I(DegeneracyProfile::power(1.0), 0.25), 4.0, 1e-12);
}

TEST(IntegralI, TruncatedPowerMatchesClosedForm) {
  // int_s^1 dt / t^2 + I_tail with I_tail = 1 equals 1/s.
  const auto p = DegeneracyProfile::power_truncated(1.0, 1.0, 1.0);
  for (double s : {1e-4, 1e-2, 0.3, 0.9}) EXPECT_NEAR(eval_I(p, s) * s, 1.0, 1e-10) << s;
}

TEST(IntegralI, ExpInverseAgainstExponentialIntegral) {
  // t -> 1/t turns int_s^1 e^{1/t} / t dt into Ei(1/s) - Ei(1).
  const auto p = DegeneracyProfile::exp_inverse(1.0);
  for (double s : {0.05, 0.2, 0.5, 0.9}) {
    const double oracle = boost::math::expint(1.0 / s) - boost::math::expint(1.0);
    EXPECT_NEAR(eval_I(p, s) / oracle, 1.0, 1e-10) << s;
  }
}

TEST(IntegralI, StrictlyDecreasing) {
  for (const auto& p : {DegeneracyProfile::power(0.5), DegeneracyProfile::exp_inverse(1.0), zeta_one()}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double s : log_grid(0.02, 0.95, 40)) {
      const double I = eval_I(p, s);
      EXPECT_LT(I, prev) << p.label() << " s = " << s;
      prev = I;
    }
  }
}

TEST(Analyze, PowerTwo) {
  const auto scan = scan_profile(DegeneracyProfile::power(2.0));
  EXPECT_NEAR(scan.A, 0.5, 1e-10);
  EXPECT_NEAR(scan.a, 0.5, 1e-10);
  ASSERT_TRUE(scan.B_available);
  EXPECT_NEAR(scan.B, 1.0, 1e-10);
  for (double s : {1e-5, 0.1, 0.7}) {
    EXPECT_NEAR(eval_sIPprime(DegeneracyProfile::power(2.0), s), 1.0, 1e-10);
  }
}

TEST(Analyze, ExpInverseLimits) {
  const auto scan = scan_profile(DegeneracyProfile::exp_inverse(1.0));
  EXPECT_NEAR(scan.a, 0.0, 1e-3);
  EXPECT_NEAR(scan.B_limit, 1.0, 0.05);
}

TEST(Analyze, ZetaOneLimit) {
  const auto scan = scan_profile(zeta_one());
  EXPECT_NEAR(scan.a, 1.0, 1e-3);
}

TEST(Analyze, PowerOneAdmissible) {
  const auto r = analyze_profile(DegeneracyProfile::power(1.0), 1.0);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.A, 1.0, 1e-10);
  EXPECT_NEAR(r.a, 1.0, 1e-6);
  EXPECT_NEAR(r.C1, 1.0, 1e-6);
  EXPECT_TRUE(r.errors.empty());
}

TEST(Analyze, InadmissibleLambdaReported) {
  const auto r = analyze_profile(DegeneracyProfile::power(0.5), 2.0);
  EXPECT_FALSE(r.passed);
  ASSERT_FALSE(r.errors.empty());
  EXPECT_EQ(r.errors.front(), ErrorCode::InadmissibleLambda);
}

TEST(Bundle, PowerOneIsIdentity) {
  const auto b = build_bundle(DegeneracyProfile::power(1.0), 1.0);
  EXPECT_DOUBLE_EQ(b.lambda(), 1.0);
  for (double s : {1e-6, 0.01, 0.3, 1.0}) {
    EXPECT_NEAR(b.H(s) / s, 1.0, 1e-12);
    EXPECT_NEAR(b.F(s) / s, 1.0, 1e-12);
    EXPECT_NEAR(b.h(s), 1.0, 1e-12);
    EXPECT_NEAR(b.G(s) / s, 1.0, 1e-9);
  }
  EXPECT_EQ(b.H(0.0), 0.0);
  EXPECT_EQ(b.G(0.0), 0.0);
}

TEST(Bundle, PowerClosedForms) {
  struct Case {
    double p, Lambda;
  };
  for (const auto c : {Case{2.0, 1.0}, Case{0.5, 0.5}, Case{1.0, 2.0}}) {
    const auto b = build_bundle(DegeneracyProfile::power(c.p), c.Lambda);
    const double r = c.p / c.Lambda;
    for (double s : {1e-4, 0.05, 0.5}) {
      const double H = std::pow(r, 1.0 / c.Lambda) * std::pow(s, r);
      const double F = std::pow(r, (c.Lambda + 1.0) / c.Lambda) *
                       std::pow(s, c.p * (c.Lambda + 1.0) / c.Lambda - 1.0);
      EXPECT_NEAR(b.H(s) / H, 1.0, 1e-8) << c.p << " " << c.Lambda << " " << s;
      EXPECT_NEAR(b.F(s) / F, 1.0, 1e-8) << c.p << " " << c.Lambda << " " << s;
    }
  }
}

TEST(Bundle, InadmissibleLambdaThrows) {
  try {
    build_bundle(DegeneracyProfile::power(0.5), 2.0);
    FAIL() << "expected InadmissibleLambda";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InadmissibleLambda);
  }
}

TEST(Bundle, CalibrationCannotFormBundle) {
  EXPECT_THROW(build_bundle(DegeneracyProfile::calibration(1.0), 1.0), Error);
}

TEST(Bundle, A2Identity) {
  const auto p1 = build_bundle(DegeneracyProfile::power(1.0), 1.0);
  EXPECT_LE(verify_A2(p1, log_grid(1e-6, 1.0, 50)), 1e-10);
  EXPECT_LE(verify_A2(p1, {1.0}), 1e-10);
  const auto e = build_bundle(DegeneracyProfile::exp_inverse(1.0), 1.0);
  EXPECT_LE(verify_A2(e, log_grid(0.05, 0.9, 50)), 1e-8);
}

TEST(Bundle, GBoundAndMonotone) {
  for (const auto& p : {DegeneracyProfile::power(2.0), DegeneracyProfile::exp_inverse(1.0), zeta_one()}) {
    const auto b = build_bundle(p, 1.0);
    double prevH = 0.0, prevF = 0.0, prevG = 0.0;
    for (double s : b.probe_grid(60)) {
      EXPECT_LE(b.G(s), std::sqrt(s * b.F(s)) * (1.0 + 1e-9)) << p.label() << " " << s;
      EXPECT_GT(b.H(s), prevH);
      EXPECT_GT(b.F(s), prevF);
      EXPECT_GT(b.G(s), prevG);
      prevH = b.H(s);
      prevF = b.F(s);
      prevG = b.G(s);
    }
  }
}

TEST(Bundle, HtildePrimeIsInverseSqrtP) {
  const auto b = build_bundle(DegeneracyProfile::exp_inverse(1.0), 1.0);
  for (double s : {0.1, 0.4, 0.8}) {
    EXPECT_NEAR(b.H_tilde_prime(s) * std::sqrt(b.profile().value(s)), 1.0, 1e-12);
  }
}

TEST(Bundle, ScaleRatioBounded) {
  // F / (G G') stays bounded on the probe grid and below the reported C1.
  for (const auto& p : {DegeneracyProfile::power(2.0), DegeneracyProfile::exp_inverse(1.0), zeta_one()}) {
    const auto b = build_bundle(p, 1.0);
    ASSERT_TRUE(std::isfinite(b.C1()));
    for (double s : b.probe_grid(200)) {
      EXPECT_LE(b.F(s), b.C1() * b.G(s) * b.G_prime(s) * (1.0 + 1e-9)) << p.label() << " " << s;
    }
  }
}

TEST(RatioHG, PowerOneIsOne) {
  const auto b = build_bundle(DegeneracyProfile::power(1.0), 1.0);
  EXPECT_NEAR(ratio_HG(b, 0.5), 1.0, 1e-12);
  for (double s : {1e-4, 0.1, 0.9}) EXPECT_NEAR(ratio_HG(b, s), 1.0, 1e-12);
}

TEST(RatioHG, MatchesDirectQuotient) {
  const auto b = build_bundle(DegeneracyProfile::exp_inverse(1.0), 1.0);
  for (double s : {0.1, 0.5}) {
    const double d = 1e-6 * s;
    const double Hprime = (b.H(s + d) - b.H(s - d)) / (2.0 * d);
    EXPECT_NEAR(ratio_HG(b, s) / (Hprime / b.G_prime(s)), 1.0, 1e-6);
  }
}

TEST(RatioHG, OutsideDomainThrows) {
  const auto b = build_bundle(DegeneracyProfile::power(1.0), 1.0);
  EXPECT_THROW(ratio_HG(b, 2.0), Error);
}
