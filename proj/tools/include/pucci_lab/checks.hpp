#pragma once

// Verification helpers shared by the commands and the acceptance run.

#include <vector>

#include "pucci/grid_diagnostics.hpp"
#include "pucci/grid_domain.hpp"
#include "pucci/operators.hpp"

namespace pucci::lab {

/// First positive zero of J0 by bisection on std::cyl_bessel_j.
double bessel_j0_first_zero();

struct HessianCrossCheck {
  double max_error = 0.0;  // max entry difference over the sampled points
  bool pattern_confirmed = false;
  int points = 0;
};

/// Compares boundary_hessian(p, c, 1, 1/R) with centered second differences
/// of the closed-form f = 1 solution on the disk of radius R, in the frame
/// (tangent, inner normal) at `points` equally spaced boundary points. The
/// closed form uses coefficient a, so for a < A it is only a solution where
/// the shooting profile has both Hessian eigenvalues negative; that pattern
/// is reported. Requires variant Plus.
HessianCrossCheck boundary_hessian_crosscheck(const PucciParams& p, double R, int points);

/// Laplacian torsion solution of u'' = -1 on Ellipse(ax, ay):
/// u = ax^2 ay^2 / (2 (ax^2 + ay^2)) (1 - x^2/ax^2 - y^2/ay^2).
struct EllipseTorsion {
  double ax = 2.0;
  double ay = 1.0;

  double value(grid::Vec2 x) const noexcept;
  grid::Vec2 gradient(grid::Vec2 x) const noexcept;
  /// Outward normal derivative at a boundary point.
  double normal_derivative(grid::Vec2 x) const noexcept;
};

/// `samples` positions from t_min + h up to t* - margin (inclusive).
std::vector<double> sweep_positions(const grid::CriticalPosition& cp, double h, int samples);

}  // namespace pucci::lab
