#include "degenlab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "degenlab/error.hpp"

namespace degenlab::quad {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

// Integrands built from nested quadrature carry noise near this relative level.
constexpr double kNoiseFloor = 1e-8;

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate(const std::function<double(double)>& f, double a, double b) {
  // Map onto [-1, 1] so the rule's error and L1 estimates come back in the
  // caller's scale (Boost leaves them unscaled for a single panel).
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto g = [&](double t) { return half * f(mid + half * t); };
  double error = 0.0;
  double l1 = 0.0;
  const double value = Kronrod::integrate(g, -1.0, 1.0, 0, 0.0, &error, &l1);
  return {a, b, value, error, std::abs(l1)};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol, unsigned max_panels) {
  if (a == b) return {};
  std::priority_queue<Panel> panels;
  panels.push(evaluate(f, a, b));
  double value = panels.top().value;
  double error = panels.top().error;
  double l1 = panels.top().l1;
  while (panels.size() < max_panels && std::isfinite(value) &&
         error > std::max(rel_tol * std::abs(value), abs_tol)) {
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = evaluate(f, worst.a, mid);
    const Panel right = evaluate(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  if (!std::isfinite(value) ||
      error > std::max({10.0 * rel_tol * l1, 10.0 * abs_tol, kNoiseFloor * l1})) {
    std::ostringstream msg;
    msg << "integral over [" << a << ", " << b << "] did not converge (value " << value
        << ", error " << error << ")";
    throw Error(ErrorCode::QuadratureDivergent, msg.str());
  }
  return {value, error};
}

double kronrod15(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  return evaluate(f, a, b).value;
}

}  // namespace degenlab::quad
