#pragma once

// Monotone wide-stencil discretization of |Du|^alpha M(D^2u) on a GridDomain.
//
// In 2D, M^+(X) is the maximum over orthonormal frames (e1, e2) of
// sum_i A (e_i.X e_i)^+ - a (e_i.X e_i)^-, attained in the eigenframe, and
// M^- is the corresponding minimum. Restricting the frames to the integer
// direction pairs of a StencilSet and replacing e.X e by directional second
// differences gives a scheme that is nondecreasing in every neighbor value.

#include <array>
#include <cstdint>
#include <vector>

#include "pucci/grid_domain.hpp"
#include "pucci/operators.hpp"

namespace pucci::grid {

/// Floor applied to |grad u| when alpha < 0.
inline constexpr double kGradientFloor = 1e-8;

GridField discretize_F(const PucciParams& p, const GridDomain& dom, const GridField& u,
                       const StencilSet& stencil = StencilSet::wide(3));

/// Centered (cut-cell aware) gradient at an interior cell.
Vec2 gradient_at(const GridDomain& dom, const GridField& u, std::size_t cell);

namespace detail {

struct Neighbor {
  std::int32_t cell = -1;  // interior neighbor, or
  std::int32_t cut = -1;   // boundary cut point
  double weight = 0.0;
};

/// Value of the scheme at one cell together with the linear row of the
/// active policy (chosen pair and per-direction coefficient), so that
/// value == grad_factor * (diag * u_c + sum weight * u_nb).
struct CellLinearization {
  double value = 0.0;
  double grad_factor = 1.0;
  double diag = 0.0;
  std::array<Neighbor, 4> neighbors{};
  int pair = -1;
};

/// Master direction index of every stencil direction, per pair.
std::vector<std::array<int, 2>> resolve_pairs(const StencilSet& stencil);

CellLinearization linearize_cell(const PucciParams& p, const GridDomain& dom, const GridField& u,
                                 const std::vector<std::array<int, 2>>& pairs, std::size_t cell);

}  // namespace detail

}  // namespace pucci::grid
