#include "degenlab/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "degenlab/bundle.hpp"
#include "degenlab/integral.hpp"

namespace degenlab::constitutive {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMuFloor = 1e-3;

struct Sup {
  double value = -kInf;
  double at = 0.0;
};

// sup of f on a log grid, refined twice around the sampled maximiser.
Sup refined_sup(const std::function<double(double)>& f, double lo, double hi) {
  Sup best;
  std::vector<double> grid = log_grid(lo, hi, 241);
  for (int pass = 0; pass < 3; ++pass) {
    std::size_t arg = 0;
    double local = -kInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = f(grid[i]);
      if (v > local) {
        local = v;
        arg = i;
      }
    }
    if (local > best.value) best = {local, grid[arg]};
    const double a = grid[arg == 0 ? 0 : arg - 1];
    const double b = grid[std::min(arg + 1, grid.size() - 1)];
    if (!(b > a)) break;
    grid = log_grid(a, b, 41);
  }
  return best;
}

}  // namespace

ProfileScan scan_profile(const DegeneracyProfile& profile) {
  ProfileScan scan;
  const double M = profile.upper();
  scan.scan_lo = 1e-12 * M;
  scan.scan_hi = M;

  const auto PI = [&](double s) { return eval_PI(profile, s); };
  const Sup sup_PI = refined_sup(PI, scan.scan_lo, scan.scan_hi);
  const LimitEstimate limit_PI = estimate_limit_at_zero(PI, geometric_sequence(1e-4 * M, 0.1, 8));

  if (limit_PI.diverging) {
    scan.a = scan.A = kInf;
    scan.a_band = kInf;
    scan.a_diverging = true;
  } else {
    scan.a = std::max(0.0, limit_PI.value);
    scan.a_band = limit_PI.band;
    scan.A = std::max(sup_PI.value, scan.a);
    scan.A_argmax = sup_PI.value >= scan.a ? sup_PI.at : 0.0;
  }

  scan.B_available = profile.differentiable();
  if (scan.B_available) {
    const auto sIP = [&](double s) { return eval_sIPprime(profile, s); };
    const Sup sup_B = refined_sup(sIP, scan.scan_lo, scan.scan_hi);
    const LimitEstimate limit_B = estimate_limit_at_zero(sIP, geometric_sequence(1e-4 * M, 0.1, 8));
    scan.B_limit = limit_B.diverging ? kInf : limit_B.value;
    scan.B_limit_band = limit_B.band;
    scan.B = std::max(sup_B.value, scan.B_limit);
  } else {
    scan.B = std::numeric_limits<double>::quiet_NaN();
    scan.B_limit = scan.B;
  }
  return scan;
}

AdmissibilityReport analyze_profile(const DegeneracyProfile& profile, double Lambda) {
  AdmissibilityReport report;
  report.Lambda = Lambda;
  report.lambda = 2.0 / (Lambda + 1.0);
  const ProfileScan scan = scan_profile(profile);
  report.A = scan.A;
  report.a = scan.a;
  report.a_band = scan.a_band;
  report.B = scan.B;
  report.mu = scan.B_available ? std::max(scan.B, kMuFloor) : std::numeric_limits<double>::quiet_NaN();
  report.lambda_upper = scan.A <= 1.0 ? kInf : 1.0 / (scan.A - 1.0);
  report.C1 = std::numeric_limits<double>::quiet_NaN();
  report.A2_deviation = std::numeric_limits<double>::quiet_NaN();

  const double bound = (Lambda + 1.0) / Lambda;
  auto& c = report.checks;
  c.A_finite = std::isfinite(scan.A);
  c.lambda_ok = c.A_finite && bound > scan.A;
  c.a_ok = std::isfinite(scan.a) && bound > scan.a;
  if (scan.B_available) {
    c.B_finite = std::isfinite(scan.B);
  } else {
    c.B_finite = true;
    report.notes.emplace_back("profile is not differentiable; B and mu not computed");
  }
  if (scan.a_diverging) report.errors.push_back(ErrorCode::AUnbounded);

  if (c.lambda_ok) {
    try {
      const ConstitutiveBundle bundle = build_bundle(profile, Lambda, scan);
      const auto& d = bundle.diagnostics();
      report.C1 = d.C1;
      report.A2_deviation = d.A2_deviation;
      report.probe_lo = bundle.probe_lo();
      report.probe_hi = bundle.probe_hi();
      report.probe_count = 200;
      c.F_monotone = d.monotone;
      c.A2_ok = d.A2_deviation <= 1e-8;
      c.G_bound = d.G_bound;
      c.C1_finite = std::isfinite(d.C1) && d.C1 > 0.0;
      report.notes.emplace_back("C1 is an empirical supremum over the probe grid");
    } catch (const Error& e) {
      report.errors.push_back(e.code());
      report.notes.emplace_back(e.what());
    }
  } else if (!scan.a_diverging) {
    report.errors.push_back(ErrorCode::InadmissibleLambda);
  }

  report.passed = c.A_finite && c.lambda_ok && c.a_ok && c.B_finite && c.F_monotone && c.A2_ok &&
                  c.G_bound && c.C1_finite;
  return report;
}

}  // namespace degenlab::constitutive
