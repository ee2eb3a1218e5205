#pragma once

// Diagnostics on solved grid fields: Neumann traces, moving-plane reflection
// gaps, and the discrete comparison / small-domain maximum principle checks.

#include <optional>
#include <vector>

#include "pucci/grid_domain.hpp"
#include "pucci/grid_solver.hpp"
#include "pucci/operators.hpp"
#include "pucci/radial.hpp"

namespace pucci::grid {

/// Bilinear interpolation on the node lattice. Nodes outside the interior
/// mask contribute 0, which is the boundary value for the zero Dirichlet
/// problems the diagnostics are run on.
double interpolate(const GridDomain& dom, const GridField& u, Vec2 p);

struct TraceSample {
  double arc = 0.0;
  Vec2 point;
  double dn = 0.0;  // outward normal derivative
};

/// Outward normal derivative at every boundary sample, one-sided and second
/// order, from values at distances 2h and 4h along the inner normal. Assumes
/// zero boundary data.
std::vector<TraceSample> neumann_trace(const GridDomain& dom, const GridField& u);

struct TraceStats {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
  double spread() const noexcept { return max - min; }
};
TraceStats trace_stats(const std::vector<TraceSample>& trace);

/// Reflection of x across the line {y : y.e = t}; e must be a unit vector.
Vec2 reflect(Vec2 x, Vec2 e, double t);

/// Grid analogue of the first critical position: the largest t (scanned
/// upward in steps of h/2 from the lowest interior cell) such that every
/// interior node with y.e < s reflects into the closed shape for all
/// scanned s <= t.
struct CriticalPosition {
  double t_min = 0.0;   // lowest interior value of x.e
  double t_star = 0.0;  // last admissible scanned position
  double margin = 0.0;  // 2h, to be subtracted before sampling gaps
};
CriticalPosition critical_position(const GridDomain& dom, Vec2 e);

/// max (u_t - u) over the grid points x of the reflected cap (x.e > t whose
/// mirror image lies in the lower cap), with u_t(x) = u(mirror of x) by
/// bilinear interpolation. Throws ReflectionOutOfDomain when some interior
/// node of the lower cap reflects outside the shape, i.e. t > t*. Returns
/// -inf for an empty cap.
double reflection_gap(const GridDomain& dom, const GridField& u, Vec2 e, double t);

/// Same comparison restricted to the part of the reflected cap that stays in
/// the shape; never throws ReflectionOutOfDomain. Used for directions along
/// which the domain is not symmetric.
struct PartialGap {
  double gap = 0.0;
  std::size_t points = 0;
  std::size_t outside = 0;  // lower-cap nodes whose mirror left the shape
};
PartialGap reflection_gap_partial(const GridDomain& dom, const GridField& u, Vec2 e, double t);

/// Which comparison hypotheses the source satisfies.
enum class ComparisonCase { NonincreasingSource = 1, SublinearSource = 2 };

/// Structural hypothesis check: case 1 for Constant with k >= 0, EigenPower with
/// lambda <= 0 and PowerPair with lambda <= 0; case 2 for EigenPower with
/// lambda >= 0 and PowerPair with lambda, mu >= 0 and beta > 1 + alpha.
/// Throws HypothesisViolation otherwise.
ComparisonCase comparison_case(const radial::SourceSpec& spec, double alpha);

struct ComparisonReport {
  ComparisonCase hypothesis = ComparisonCase::NonincreasingSource;
  double gap = 0.0;        // max (u1 - u2)^+
  double threshold = 0.0;  // 2h |u2|_inf
  bool pass = false;
};

/// Solves the two Dirichlet problems with data g1 <= g2 and reports whether
/// the discrete solutions are ordered up to 2h |u2|_inf.
ComparisonReport comparison_check(const PucciParams& p, const radial::SourceSpec& spec, const GridDomain& dom,
                                  const BoundaryData& g1, const BoundaryData& g2, const SolveOptions& options = {});

struct SmallDomainOptions {
  int sizes = 6;
  double shrink = 0.5;
  /// Grid cells across the diameter of each scaled domain.
  int cells_per_diameter = 48;
  double tolerance = 1e-9;
};

struct SmallDomainTrial {
  double scale = 1.0;
  double diameter = 0.0;
  double h = 0.0;
  double max_w = 0.0;
  bool pass = false;       // max w <= tolerance
  bool predicted = false;  // diameter below the predicted threshold
};

struct SmallDomainReport {
  double L = 0.0;
  /// Largest diameter d with L < lambda(M^+, ball of radius d / sqrt 3).
  double predicted_diameter = 0.0;
  /// Largest tested diameter from which on every smaller domain passed.
  std::optional<double> empirical_diameter;
  std::vector<SmallDomainTrial> trials;
  bool pass = false;
};

/// Solves M^+ w + L w = 1 with w = 0 on the boundary on shrinking copies of
/// `base` (scale shrink^k) and checks w <= 0. A domain inside a ball of
/// radius rho passes whenever L is below the principal eigenvalue of that
/// ball; by Jung's theorem rho = diameter / sqrt 3 suffices in the plane.
/// PASS when all predicted sizes pass and an empirical threshold exists.
SmallDomainReport small_domain_check(const PucciParams& p, double L, const Shape& base,
                                     const SmallDomainOptions& options = {});

}  // namespace pucci::grid
