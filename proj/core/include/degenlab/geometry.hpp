#pragma once

#include <vector>

namespace degenlab::solver {

enum class GeometryKind { Interval, Radial };

/// Uniform 1-D grid. Interval: x_i = i L / m on [0, L], Dirichlet at both ends.
/// Radial: r_i = i L / m on [0, L] for a ball in R^N, symmetry at r = 0 and
/// Dirichlet at r = L.
class Geometry {
 public:
  static Geometry interval(double L, int m);
  static Geometry radial(int N, double L, int m);

  GeometryKind kind() const noexcept { return kind_; }
  double length() const noexcept { return L_; }
  int cells() const noexcept { return m_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  /// Spatial dimension; 1 for an interval.
  int dimension() const noexcept { return N_; }
  double spacing() const noexcept { return h_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }

  /// Rows of the discrete Laplacian: (Lu)_i = lower_i u_{i-1} + diag_i u_i + upper_i u_{i+1}.
  /// Dirichlet rows are zero.
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& diag() const noexcept { return diag_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  bool is_dirichlet(std::size_t i) const noexcept;

  /// Trapezoid weights for int f dx (radial: |S^{N-1}| r^{N-1} dr).
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Measure of cell [x_i, x_{i+1}] used for gradient integrals.
  const std::vector<double>& cell_weights() const noexcept { return cell_weights_; }

  /// Distance of node i from the point x0 (radial geometries accept x0 = 0 only).
  double distance(std::size_t i, double x0) const;
  /// Largest distance from x0 to a node.
  double max_distance(double x0) const;

 private:
  Geometry() = default;
  void build_weights();

  GeometryKind kind_ = GeometryKind::Interval;
  double L_ = 0.0;
  int m_ = 0;
  int N_ = 1;
  double h_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> lower_, diag_, upper_;
  std::vector<double> weights_;
  std::vector<double> cell_weights_;
};

/// Surface area of the unit sphere in R^N (2 for N = 1).
double sphere_area(int N);

/// Second-order discrete Laplacian of a nodal field. Entries at Dirichlet
/// nodes are 0. Throws DimensionMismatch on a size mismatch.
std::vector<double> laplacian_apply(const Geometry& geometry, const std::vector<double>& field);

}  // namespace degenlab::solver
