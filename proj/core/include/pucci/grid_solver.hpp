#pragma once

// Dirichlet solves of |Du|^alpha M(D^2u) + f(u) = 0 and the grid principal
// eigenvalue, on top of the wide-stencil scheme.

#include <functional>
#include <vector>

#include "pucci/grid_domain.hpp"
#include "pucci/grid_operator.hpp"
#include "pucci/operators.hpp"
#include "pucci/radial.hpp"

namespace pucci::grid {

/// Zeroth-order term f(u, cell) with its u-derivative.
struct Source {
  std::function<double(double, std::size_t)> value;
  std::function<double(double, std::size_t)> derivative;

  static Source constant(double k);
  static Source from_spec(const radial::SourceSpec& spec, double alpha);
  /// f(u, cell) = slope * u + intercept
  static Source affine(double slope, double intercept);
  /// f(u, cell) = per_cell[cell], independent of u.
  static Source field(std::vector<double> per_cell);
};

struct BoundaryData {
  std::function<double(Vec2)> g;

  static BoundaryData constant(double value);
};

/// Field with zero interior values and boundary values sampled from g.
GridField boundary_field(const GridDomain& dom, const BoundaryData& g);

struct SolveOptions {
  StencilSet stencil = StencilSet::wide(3);
  int max_iterations = 100;
  double tolerance = 1e-8;
  /// alpha != 0 is rejected unless this is set.
  bool experimental_alpha = false;
};

struct SolveResult {
  GridField u;
  int iterations = 0;
  std::vector<double> residual_history;
};

/// Sup-norm residual max |F(u) + f(u)| over interior cells.
double residual(const PucciParams& p, const GridDomain& dom, const GridField& u, const Source& f,
                const StencilSet& stencil = StencilSet::wide(3));

/// Solves F(u) + f(u) = 0 with u = g on the boundary. The scheme is a max
/// (Plus) or min (Minus) of linear monotone operators, so the solve is a
/// policy (Howard / semismooth Newton) iteration whose linear systems go to
/// BiCGSTAB with an ILUT preconditioner, sparse LU as the fallback. Converged when the sup residual is at most
/// tolerance * max(1, |u|_inf); throws IterationLimit with the residual
/// history otherwise.
SolveResult solve_dirichlet(const PucciParams& p, const GridDomain& dom, const Source& f, const BoundaryData& g,
                            const SolveOptions& options = {});

struct EigenOptions {
  StencilSet stencil = StencilSet::wide(3);
  int max_iterations = 200;
  double tolerance = 1e-6;
};

struct EigenResult {
  double lambda = 0.0;
  GridField phi;  // positive, sup-normalized, zero boundary data
  int iterations = 0;
  std::vector<double> history;
};

/// Inverse power iteration F(phi_{k+1}) = -phi_k with zero boundary data,
/// lambda_k = 1/|phi_{k+1}|_inf. Requires alpha = 0. Throws PositivityLoss if
/// a normalized iterate drops below -1e-12.
EigenResult principal_eigenvalue_grid(const PucciParams& p, const GridDomain& dom, const EigenOptions& options = {});

}  // namespace pucci::grid
