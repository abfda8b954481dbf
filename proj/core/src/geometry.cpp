#include "degenlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "degenlab/error.hpp"

namespace degenlab::solver {

namespace {

constexpr int kMinCells = 16;

void require_grid(double L, int m) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw Error(ErrorCode::InvalidArgument, "domain length must be positive");
  }
  if (m < kMinCells) {
    std::ostringstream msg;
    msg << "need at least " << kMinCells << " cells, got " << m;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

}  // namespace

double sphere_area(int N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

Geometry Geometry::interval(double L, int m) {
  require_grid(L, m);
  Geometry g;
  g.kind_ = GeometryKind::Interval;
  g.L_ = L;
  g.m_ = m;
  g.N_ = 1;
  g.h_ = L / m;
  const auto n = static_cast<std::size_t>(m) + 1;
  g.nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.nodes_[i] = g.h_ * static_cast<double>(i);
  g.lower_.assign(n, 0.0);
  g.diag_.assign(n, 0.0);
  g.upper_.assign(n, 0.0);
  const double inv = 1.0 / (g.h_ * g.h_);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    g.lower_[i] = inv;
    g.diag_[i] = -2.0 * inv;
    g.upper_[i] = inv;
  }
  g.build_weights();
  return g;
}

Geometry Geometry::radial(int N, double L, int m) {
  require_grid(L, m);
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "radial geometry needs N >= 1");
  Geometry g;
  g.kind_ = GeometryKind::Radial;
  g.L_ = L;
  g.m_ = m;
  g.N_ = N;
  g.h_ = L / m;
  const auto n = static_cast<std::size_t>(m) + 1;
  g.nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.nodes_[i] = g.h_ * static_cast<double>(i);
  g.lower_.assign(n, 0.0);
  g.diag_.assign(n, 0.0);
  g.upper_.assign(n, 0.0);
  const double h = g.h_;
  const double inv = 1.0 / (h * h);

  // r = 0: u_r = 0 and Delta u = N u_rr there.
  g.diag_[0] = -2.0 * N * inv;
  g.upper_[0] = 2.0 * N * inv;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = g.nodes_[i];
    if (2.0 * static_cast<double>(i) >= N - 1.0) {
      // u_rr + (N-1)/r u_r with central differences; exact on quadratics.
      const double drift = (N - 1.0) / (2.0 * r * h);
      g.lower_[i] = inv - drift;
      g.diag_[i] = -2.0 * inv;
      g.upper_[i] = inv + drift;
    } else {
      // Near the axis in high dimension the central drift would make the
      // lower coefficient negative; the flux form keeps all couplings positive.
      const double wm = std::pow(r - 0.5 * h, N - 1);
      const double wp = std::pow(r + 0.5 * h, N - 1);
      const double w = std::pow(r, N - 1);
      g.lower_[i] = wm / w * inv;
      g.upper_[i] = wp / w * inv;
      g.diag_[i] = -(wm + wp) / w * inv;
    }
  }
  g.build_weights();
  return g;
}

void Geometry::build_weights() {
  const std::size_t n = nodes_.size();
  weights_.assign(n, 0.0);
  cell_weights_.assign(n - 1, 0.0);
  const double area = kind_ == GeometryKind::Radial ? sphere_area(N_) : 1.0;
  auto jac = [&](double r) {
    return kind_ == GeometryKind::Radial ? area * std::pow(r, N_ - 1) : 1.0;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = jac(nodes_[i]);
    const double b = jac(nodes_[i + 1]);
    weights_[i] += 0.5 * h_ * a;
    weights_[i + 1] += 0.5 * h_ * b;
    cell_weights_[i] = 0.5 * h_ * (a + b);
  }
}

bool Geometry::is_dirichlet(std::size_t i) const noexcept {
  if (i + 1 == nodes_.size()) return true;
  return kind_ == GeometryKind::Interval && i == 0;
}

double Geometry::distance(std::size_t i, double x0) const {
  if (kind_ == GeometryKind::Radial) {
    if (x0 != 0.0) {
      throw Error(ErrorCode::InvalidArgument, "radial geometry: the reference point must be r = 0");
    }
    return nodes_[i];
  }
  return std::abs(nodes_[i] - x0);
}

double Geometry::max_distance(double x0) const {
  if (kind_ == GeometryKind::Radial) return distance(nodes_.size() - 1, x0);
  return std::max(std::abs(x0), std::abs(L_ - x0));
}

std::vector<double> laplacian_apply(const Geometry& geometry, const std::vector<double>& field) {
  const std::size_t n = geometry.size();
  if (field.size() != n) {
    std::ostringstream msg;
    msg << "field has " << field.size() << " values, grid has " << n << " nodes";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  const auto& lo = geometry.lower();
  const auto& up = geometry.upper();
  std::vector<double> out(n, 0.0);
  // Rows sum to zero, so the difference form returns exactly 0 on constants.
  for (std::size_t i = 0; i < n; ++i) {
    if (geometry.is_dirichlet(i)) continue;
    double v = 0.0;
    if (i > 0) v += lo[i] * (field[i - 1] - field[i]);
    if (i + 1 < n) v += up[i] * (field[i + 1] - field[i]);
    out[i] = v;
  }
  return out;
}

}  // namespace degenlab::solver
