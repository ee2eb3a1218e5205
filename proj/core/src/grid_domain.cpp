#include "pucci/grid_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "pucci/error.hpp"

namespace pucci::grid {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double polygon_area(const std::vector<Vec2>& v) {
  double area = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    area += p.x * q.y - q.x * p.y;
  }
  return 0.5 * area;
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + ab * t)).norm();
}

bool polygon_inside(const std::vector<Vec2>& v, Vec2 p) {
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x_cross = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

// Outward normal of edge i of a counter-clockwise polygon.
Vec2 edge_normal(const std::vector<Vec2>& v, std::size_t i) {
  const Vec2 e = v[(i + 1) % v.size()] - v[i];
  return Vec2{e.y, -e.x}.normalized();
}

std::optional<double> unit_disk_exit(Vec2 o, Vec2 d) {
  const double a = d.dot(d);
  const double b = 2.0 * o.dot(d);
  const double c = o.dot(o) - 1.0;
  const double disc = b * b - 4.0 * a * c;
  if (a == 0.0 || disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  // numerically stable pair of roots
  const double qv = -0.5 * (b + std::copysign(sq, b));
  double r1 = qv / a;
  double r2 = qv != 0.0 ? c / qv : r1;
  if (r1 > r2) std::swap(r1, r2);
  constexpr double eps = 1e-14;
  if (r1 > eps) return r1;
  if (r2 > eps) return r2;
  return std::nullopt;
}

struct Box {
  double xmin, xmax, ymin, ymax;
};

Box bounding_box(const Shape& shape) {
  return std::visit(overloaded{
                        [](const Disk& d) { return Box{-d.R, d.R, -d.R, d.R}; },
                        [](const Ellipse& e) { return Box{-e.ax, e.ax, -e.ay, e.ay}; },
                        [](const Polygon& p) {
                          Box b{HUGE_VAL, -HUGE_VAL, HUGE_VAL, -HUGE_VAL};
                          for (const Vec2& v : p.vertices) {
                            b.xmin = std::min(b.xmin, v.x);
                            b.xmax = std::max(b.xmax, v.x);
                            b.ymin = std::min(b.ymin, v.y);
                            b.ymax = std::max(b.ymax, v.y);
                          }
                          return b;
                        },
                    },
                    shape);
}

}  // namespace

Shape validated(const Shape& shape) {
  return std::visit(overloaded{
                        [](const Disk& d) -> Shape {
                          if (!(d.R > 0.0) || !std::isfinite(d.R)) throw Error(ErrorCode::InvalidShape, "disk radius must be positive");
                          return d;
                        },
                        [](const Ellipse& e) -> Shape {
                          if (!(e.ax > 0.0) || !(e.ay > 0.0) || !std::isfinite(e.ax) || !std::isfinite(e.ay)) {
                            throw Error(ErrorCode::InvalidShape, "ellipse semi-axes must be positive");
                          }
                          return e;
                        },
                        [](const Polygon& p) -> Shape {
                          if (p.vertices.size() < 3) throw Error(ErrorCode::InvalidShape, "polygon needs at least three vertices");
                          for (const Vec2& v : p.vertices) {
                            if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw Error(ErrorCode::InvalidShape, "non-finite vertex");
                          }
                          const double area = polygon_area(p.vertices);
                          if (std::abs(area) < 1e-14) throw Error(ErrorCode::InvalidShape, "polygon has zero area");
                          Polygon out = p;
                          if (area < 0.0) std::reverse(out.vertices.begin(), out.vertices.end());
                          return out;
                        },
                    },
                    shape);
}

double signed_distance(const Shape& shape, Vec2 p) {
  return std::visit(overloaded{
                        [&](const Disk& d) { return p.norm() - d.R; },
                        [&](const Ellipse& e) {
                          const double F = p.x * p.x / (e.ax * e.ax) + p.y * p.y / (e.ay * e.ay) - 1.0;
                          const double g = 2.0 * std::hypot(p.x / (e.ax * e.ax), p.y / (e.ay * e.ay));
                          if (g < 1e-12) return -std::min(e.ax, e.ay);
                          return F / g;
                        },
                        [&](const Polygon& poly) {
                          const auto& v = poly.vertices;
                          double dist = HUGE_VAL;
                          for (std::size_t i = 0; i < v.size(); ++i) dist = std::min(dist, segment_distance(p, v[i], v[(i + 1) % v.size()]));
                          return polygon_inside(v, p) ? -dist : dist;
                        },
                    },
                    shape);
}

bool contains(const Shape& shape, Vec2 p, double tolerance) { return signed_distance(shape, p) <= tolerance; }

std::optional<double> ray_exit(const Shape& shape, Vec2 origin, Vec2 dir) {
  return std::visit(overloaded{
                        [&](const Disk& d) { return unit_disk_exit(origin * (1.0 / d.R), dir * (1.0 / d.R)); },
                        [&](const Ellipse& e) {
                          return unit_disk_exit({origin.x / e.ax, origin.y / e.ay}, {dir.x / e.ax, dir.y / e.ay});
                        },
                        [&](const Polygon& poly) -> std::optional<double> {
                          const auto& v = poly.vertices;
                          std::optional<double> best;
                          for (std::size_t i = 0; i < v.size(); ++i) {
                            const Vec2 a = v[i];
                            const Vec2 e = v[(i + 1) % v.size()] - a;
                            const double denom = dir.x * (-e.y) - dir.y * (-e.x);
                            if (std::abs(denom) < 1e-300) continue;
                            const Vec2 r = a - origin;
                            const double t = (r.x * (-e.y) - r.y * (-e.x)) / denom;
                            const double s = (dir.x * r.y - dir.y * r.x) / denom;
                            if (t > 1e-14 && s >= -1e-12 && s <= 1.0 + 1e-12) {
                              if (!best || t < *best) best = t;
                            }
                          }
                          return best;
                        },
                    },
                    shape);
}

Vec2 outward_normal(const Shape& shape, Vec2 p) {
  return std::visit(overloaded{
                        [&](const Disk&) { return p.normalized(); },
                        [&](const Ellipse& e) { return Vec2{p.x / (e.ax * e.ax), p.y / (e.ay * e.ay)}.normalized(); },
                        [&](const Polygon& poly) {
                          const auto& v = poly.vertices;
                          std::size_t best = 0;
                          double dist = HUGE_VAL;
                          for (std::size_t i = 0; i < v.size(); ++i) {
                            const double d = segment_distance(p, v[i], v[(i + 1) % v.size()]);
                            if (d < dist) {
                              dist = d;
                              best = i;
                            }
                          }
                          return edge_normal(v, best);
                        },
                    },
                    shape);
}

double diameter(const Shape& shape) {
  return std::visit(overloaded{
                        [](const Disk& d) { return 2.0 * d.R; },
                        [](const Ellipse& e) { return 2.0 * std::max(e.ax, e.ay); },
                        [](const Polygon& p) {
                          double d = 0.0;
                          for (const Vec2& a : p.vertices)
                            for (const Vec2& b : p.vertices) d = std::max(d, (a - b).norm());
                          return d;
                        },
                    },
                    shape);
}

Shape scaled(const Shape& shape, double s) {
  return std::visit(overloaded{
                        [&](const Disk& d) -> Shape { return Disk{d.R * s}; },
                        [&](const Ellipse& e) -> Shape { return Ellipse{e.ax * s, e.ay * s}; },
                        [&](const Polygon& p) -> Shape {
                          Polygon out = p;
                          for (Vec2& v : out.vertices) v = v * s;
                          return out;
                        },
                    },
                    shape);
}

const std::array<std::array<int, 2>, GridDomain::kDirections>& GridDomain::direction_table() {
  static const std::array<std::array<int, 2>, kDirections> table = [] {
    constexpr std::array<std::array<int, 2>, 8> reps{{{1, 0}, {1, 1}, {2, 1}, {1, 2}, {3, 1}, {1, 3}, {3, 2}, {2, 3}}};
    std::array<std::array<int, 2>, kDirections> t{};
    for (std::size_t k = 0; k < reps.size(); ++k) {
      t[k] = reps[k];
      t[k + 8] = {reps[k][1], -reps[k][0]};
    }
    return t;
  }();
  return table;
}

int GridDomain::direction_index(int dx, int dy, bool* flipped) {
  const auto& table = direction_table();
  for (int k = 0; k < kDirections; ++k) {
    if (table[k][0] == dx && table[k][1] == dy) {
      if (flipped) *flipped = false;
      return k;
    }
    if (table[k][0] == -dx && table[k][1] == -dy) {
      if (flipped) *flipped = true;
      return k;
    }
  }
  return -1;
}

StencilSet StencilSet::wide(int radius) {
  if (radius < 1 || radius > 3) throw Error(ErrorCode::InvalidParameters, "stencil radius must be 1, 2 or 3");
  StencilSet s;
  const auto& table = GridDomain::direction_table();
  for (int k = 0; k < 8; ++k) {
    const auto d = table[k];
    if (std::max(std::abs(d[0]), std::abs(d[1])) > radius) continue;
    s.directions.push_back(d);
    s.directions.push_back(table[k + 8]);
    const int n = static_cast<int>(s.directions.size());
    s.pairs.emplace_back(n - 2, n - 1);
  }
  return s;
}

bool StencilSet::valid() const {
  if (pairs.empty()) return false;
  for (const auto& d : directions) {
    if (GridDomain::direction_index(d[0], d[1]) < 0) return false;
  }
  for (const auto& [first, second] : pairs) {
    if (first < 0 || second < 0 || first >= static_cast<int>(directions.size()) ||
        second >= static_cast<int>(directions.size())) {
      return false;
    }
    const auto& d1 = directions[static_cast<std::size_t>(first)];
    const auto& d2 = directions[static_cast<std::size_t>(second)];
    if (d1[0] * d2[0] + d1[1] * d2[1] != 0) return false;
  }
  return true;
}

namespace {

std::int32_t nearest_cell(const GridDomain& dom, Vec2 p) {
  const int ic = static_cast<int>(std::lround(p.x / dom.h)) - dom.i0;
  const int jc = static_cast<int>(std::lround(p.y / dom.h)) - dom.j0;
  std::int32_t best = -1;
  double best_d = HUGE_VAL;
  for (int dj = -3; dj <= 3; ++dj) {
    for (int di = -3; di <= 3; ++di) {
      const int i = ic + di;
      const int j = jc + dj;
      if (i < 0 || j < 0 || i >= dom.nx || j >= dom.ny) continue;
      const std::int32_t cell = dom.cell_of_node[static_cast<std::size_t>(j * dom.nx + i)];
      if (cell < 0) continue;
      const double d = (dom.node_position(i, j) - p).norm();
      if (d < best_d) {
        best_d = d;
        best = cell;
      }
    }
  }
  return best;
}

void sample_boundary(GridDomain& dom) {
  const double h = dom.h;
  std::visit(overloaded{
                 [&](const Disk& d) {
                   const int m = std::max(64, static_cast<int>(std::ceil(2.0 * std::numbers::pi * d.R / h)));
                   for (int k = 0; k < m; ++k) {
                     const double t = 2.0 * std::numbers::pi * k / m;
                     const Vec2 n{std::cos(t), std::sin(t)};
                     dom.boundary.push_back({n * d.R, n, d.R * t, -1});
                   }
                 },
                 [&](const Ellipse& e) {
                   const double a = e.ax;
                   const double b = e.ay;
                   const double perimeter = std::numbers::pi * (3.0 * (a + b) - std::sqrt((3.0 * a + b) * (a + 3.0 * b)));
                   const int m = std::max(64, static_cast<int>(std::ceil(perimeter / h)));
                   double arc = 0.0;
                   Vec2 prev{a, 0.0};
                   for (int k = 0; k < m; ++k) {
                     const double t = 2.0 * std::numbers::pi * k / m;
                     const Vec2 p{a * std::cos(t), b * std::sin(t)};
                     arc += (p - prev).norm();
                     prev = p;
                     dom.boundary.push_back({p, outward_normal(e, p), arc, -1});
                   }
                 },
                 [&](const Polygon& poly) {
                   const auto& v = poly.vertices;
                   double arc = 0.0;
                   for (std::size_t i = 0; i < v.size(); ++i) {
                     const Vec2 a = v[i];
                     const Vec2 edge = v[(i + 1) % v.size()] - a;
                     const double len = edge.norm();
                     const int m = std::max(1, static_cast<int>(std::lround(len / h)));
                     const Vec2 n = edge_normal(v, i);
                     for (int k = 0; k < m; ++k) {
                       const double s = (k + 0.5) / m;
                       dom.boundary.push_back({a + edge * s, n, arc + s * len, -1});
                     }
                     arc += len;
                   }
                 },
             },
             dom.shape);
  for (BoundarySample& b : dom.boundary) b.cell = nearest_cell(dom, b.point);
}

}  // namespace

GridDomain build_domain(const Shape& shape, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidShape, "grid spacing must be positive");
  GridDomain dom;
  dom.shape = validated(shape);
  dom.h = h;

  const Box box = bounding_box(dom.shape);
  const int ilo = static_cast<int>(std::floor(box.xmin / h)) - 1;
  const int ihi = static_cast<int>(std::ceil(box.xmax / h)) + 1;
  const int jlo = static_cast<int>(std::floor(box.ymin / h)) - 1;
  const int jhi = static_cast<int>(std::ceil(box.ymax / h)) + 1;
  const double total = static_cast<double>(ihi - ilo + 1) * static_cast<double>(jhi - jlo + 1);
  if (total > 5e7) throw Error(ErrorCode::InvalidShape, "grid too fine for the shape extent");
  dom.i0 = ilo;
  dom.j0 = jlo;
  dom.nx = ihi - ilo + 1;
  dom.ny = jhi - jlo + 1;

  const std::size_t nodes = static_cast<std::size_t>(dom.nx) * static_cast<std::size_t>(dom.ny);
  dom.mask.assign(nodes, 0);
  dom.cell_of_node.assign(nodes, -1);
  const double margin = 1e-3 * h;
  for (int j = 0; j < dom.ny; ++j) {
    for (int i = 0; i < dom.nx; ++i) {
      const std::size_t node = static_cast<std::size_t>(j * dom.nx + i);
      if (signed_distance(dom.shape, dom.node_position(i, j)) < -margin) {
        dom.mask[node] = 1;
        dom.cell_of_node[node] = static_cast<std::int32_t>(dom.node_of_cell.size());
        dom.node_of_cell.push_back(static_cast<std::int32_t>(node));
      }
    }
  }
  if (dom.cell_count() < 100) {
    throw Error(ErrorCode::InvalidShape,
                "only " + std::to_string(dom.cell_count()) + " interior cells; at least 100 are required");
  }

  const auto& table = GridDomain::direction_table();
  dom.links.resize(dom.cell_count() * GridDomain::kSignedDirections);
  for (std::size_t cell = 0; cell < dom.cell_count(); ++cell) {
    const int node = dom.node_of_cell[cell];
    const int i = node % dom.nx;
    const int j = node / dom.nx;
    const Vec2 x = dom.node_position(i, j);
    for (int s = 0; s < GridDomain::kSignedDirections; ++s) {
      const auto d = table[static_cast<std::size_t>(s / 2)];
      const int sign = (s % 2 == 0) ? 1 : -1;
      const int dx = sign * d[0];
      const int dy = sign * d[1];
      const Vec2 offset{dx * h, dy * h};
      Link& link = dom.links[cell * GridDomain::kSignedDirections + static_cast<std::size_t>(s)];

      const std::optional<double> t = ray_exit(dom.shape, x, offset);
      if (t && *t < 1.0 - 1e-12) {
        const Vec2 p = x + offset * (*t);
        link.cut = static_cast<std::int32_t>(dom.cuts.size());
        link.frac = *t;
        dom.cuts.push_back({p, outward_normal(dom.shape, p)});
        continue;
      }
      const int ni = i + dx;
      const int nj = j + dy;
      if (ni >= 0 && nj >= 0 && ni < dom.nx && nj < dom.ny) {
        const std::int32_t nb = dom.cell_of_node[static_cast<std::size_t>(nj * dom.nx + ni)];
        if (nb >= 0) {
          link.node = nb;
          link.frac = 1.0;
          continue;
        }
      }
      // Neighbor lies within the exclusion margin: it stands in for the boundary.
      const Vec2 p = x + offset;
      link.cut = static_cast<std::int32_t>(dom.cuts.size());
      link.frac = 1.0;
      dom.cuts.push_back({p, outward_normal(dom.shape, p)});
    }
  }

  sample_boundary(dom);
  return dom;
}

GridField zero_field(const GridDomain& dom) {
  GridField f;
  f.values.assign(dom.node_count(), 0.0);
  f.boundary_values.assign(dom.cuts.size(), 0.0);
  return f;
}

double max_abs_interior(const GridDomain& dom, const GridField& u) {
  double m = 0.0;
  for (std::size_t c = 0; c < dom.cell_count(); ++c) m = std::max(m, std::abs(u.at_cell(dom, c)));
  return m;
}

}  // namespace pucci::grid
