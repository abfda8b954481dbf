#include "degenlab/grid_integrals.hpp"

#include <sstream>

#include "degenlab/error.hpp"

namespace degenlab::solver {

namespace {

void check_size(const Geometry& geometry, const std::vector<double>& f) {
  if (f.size() != geometry.size()) {
    std::ostringstream msg;
    msg << "field has " << f.size() << " values, grid has " << geometry.size() << " nodes";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

}  // namespace

double integrate(const Geometry& geometry, const std::vector<double>& f) {
  check_size(geometry, f);
  const auto& w = geometry.weights();
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) total += w[i] * f[i];
  return total;
}

std::vector<double> cell_gradients(const Geometry& geometry, const std::vector<double>& f) {
  check_size(geometry, f);
  const double inv = 1.0 / geometry.spacing();
  std::vector<double> out(f.size() - 1);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) out[i] = (f[i + 1] - f[i]) * inv;
  return out;
}

double gradient_sq_integral(const Geometry& geometry, const std::vector<double>& f) {
  const auto grad = cell_gradients(geometry, f);
  const auto& w = geometry.cell_weights();
  double total = 0.0;
  for (std::size_t i = 0; i < grad.size(); ++i) total += w[i] * grad[i] * grad[i];
  return total;
}

double time_trapezoid(const std::vector<double>& t, const std::vector<double>& v) {
  if (t.size() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "time and value samples differ in length");
  }
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) total += 0.5 * (t[k + 1] - t[k]) * (v[k] + v[k + 1]);
  return total;
}

}  // namespace degenlab::solver
