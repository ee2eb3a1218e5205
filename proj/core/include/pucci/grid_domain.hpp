#pragma once

// Masked uniform 2D grids over analytic shapes, with cut-cell links for the
// wide stencil and sampled boundary points for trace diagnostics.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace pucci::grid {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const noexcept { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const noexcept { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const noexcept { return {x * s, y * s}; }
  double dot(Vec2 o) const noexcept { return x * o.x + y * o.y; }
  double norm() const noexcept { return std::hypot(x, y); }
  Vec2 normalized() const noexcept { return *this * (1.0 / norm()); }
};

struct Disk {
  double R = 1.0;
};
struct Ellipse {
  double ax = 1.0;
  double ay = 1.0;
};
/// Simple polygon; either orientation is accepted.
struct Polygon {
  std::vector<Vec2> vertices;
};
using Shape = std::variant<Disk, Ellipse, Polygon>;

/// Throws InvalidShape for non-positive radii, fewer than three vertices or a
/// zero-area polygon. Returns the counter-clockwise normalized shape.
Shape validated(const Shape& shape);

/// Signed distance (negative inside). Exact for disks and polygons, a
/// first-order level-set estimate for ellipses.
double signed_distance(const Shape& shape, Vec2 p);
bool contains(const Shape& shape, Vec2 p, double tolerance = 0.0);
/// Smallest t > 0 with origin + t*dir on the boundary, if any.
std::optional<double> ray_exit(const Shape& shape, Vec2 origin, Vec2 dir);
/// Outward unit normal at (or nearest to) a boundary point.
Vec2 outward_normal(const Shape& shape, Vec2 p);
double diameter(const Shape& shape);
Shape scaled(const Shape& shape, double s);

/// Orthogonal direction pairs used by the wide stencil. Directions are integer
/// offsets taken from the radius-3 table held by every GridDomain.
struct StencilSet {
  std::vector<std::array<int, 2>> directions;
  std::vector<std::pair<int, int>> pairs;

  /// All primitive directions with max(|dx|,|dy|) <= radius (radius 1..3),
  /// each paired with its 90-degree rotation: 2, 4 or 8 pairs.
  static StencilSet wide(int radius = 3);
  /// Checks orthogonality of every pair and membership in the domain table.
  bool valid() const;
};

/// Link from a cell to its neighbor along a signed direction: either another
/// interior cell (`node` >= 0) or a boundary cut point (`cut` >= 0) at
/// fraction `frac` of the full offset.
struct Link {
  std::int32_t node = -1;
  std::int32_t cut = -1;
  double frac = 1.0;
};

struct CutPoint {
  Vec2 point;
  Vec2 normal;
};

struct BoundarySample {
  Vec2 point;
  Vec2 normal;  // outward, unit length
  double arc = 0.0;
  std::int32_t cell = -1;  // nearest interior cell
};

class GridDomain {
 public:
  static constexpr int kDirections = 16;
  static constexpr int kSignedDirections = 2 * kDirections;

  /// Radius-3 direction table: entries k and k+8 are orthogonal.
  static const std::array<std::array<int, 2>, kDirections>& direction_table();
  /// Index into direction_table() of (dx, dy) or of (-dx, -dy); -1 if absent.
  /// `flipped` reports whether the stored direction is (-dx, -dy).
  static int direction_index(int dx, int dy, bool* flipped = nullptr);

  Shape shape;
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  int i0 = 0;  // node (i, j) sits at ((i0 + i) h, (j0 + j) h)
  int j0 = 0;
  std::vector<std::uint8_t> mask;       // nx * ny
  std::vector<std::int32_t> cell_of_node;  // -1 outside
  std::vector<std::int32_t> node_of_cell;
  std::vector<Link> links;  // cell_count() * kSignedDirections
  std::vector<CutPoint> cuts;
  std::vector<BoundarySample> boundary;

  std::size_t node_count() const noexcept { return mask.size(); }
  std::size_t cell_count() const noexcept { return node_of_cell.size(); }
  Vec2 node_position(int i, int j) const noexcept { return {(i0 + i) * h, (j0 + j) * h}; }
  Vec2 cell_position(std::size_t cell) const noexcept {
    const int node = node_of_cell[cell];
    return node_position(node % nx, node / nx);
  }
  /// Signed direction s = 2k (+d_k) or 2k+1 (-d_k).
  const Link& link(std::size_t cell, int signed_dir) const noexcept {
    return links[cell * kSignedDirections + static_cast<std::size_t>(signed_dir)];
  }
};

/// Interior cells are nodes farther than 1e-3 h inside the shape; at least
/// 100 are required. Throws InvalidShape otherwise.
GridDomain build_domain(const Shape& shape, double h);

/// Scalar field: `values` aligned with the node mask (zero outside),
/// `boundary_values` aligned with the domain's cut points.
struct GridField {
  std::vector<double> values;
  std::vector<double> boundary_values;

  double at_cell(const GridDomain& dom, std::size_t cell) const noexcept {
    return values[static_cast<std::size_t>(dom.node_of_cell[cell])];
  }
};

GridField zero_field(const GridDomain& dom);
double max_abs_interior(const GridDomain& dom, const GridField& u);

}  // namespace pucci::grid
