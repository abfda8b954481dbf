#pragma once

#include <vector>

#include "degenlab/geometry.hpp"

namespace degenlab::solver {

/// Trapezoid rule for int f dx on the grid (radial: with the r^{N-1} measure).
double integrate(const Geometry& geometry, const std::vector<double>& f);

/// int |grad f|^2 dx with one-sided differences per cell and the cell measure.
double gradient_sq_integral(const Geometry& geometry, const std::vector<double>& f);

/// Per-cell difference quotients (f_{i+1} - f_i) / h.
std::vector<double> cell_gradients(const Geometry& geometry, const std::vector<double>& f);

/// Trapezoid rule in time for samples v_k at increasing times t_k.
double time_trapezoid(const std::vector<double>& t, const std::vector<double>& v);

}  // namespace degenlab::solver
