#include "pucci/grid_operator.hpp"

#include <cmath>

#include "pucci/error.hpp"
#include "pucci/parallel.hpp"

namespace pucci::grid {

namespace detail {

namespace {

struct SecondDifference {
  double delta = 0.0;
  double w_plus = 0.0;
  double w_minus = 0.0;
  Neighbor plus;
  Neighbor minus;
};

double link_value(const GridDomain& dom, const GridField& u, const Link& l) {
  if (l.node >= 0) return u.values[static_cast<std::size_t>(dom.node_of_cell[static_cast<std::size_t>(l.node)])];
  return u.boundary_values[static_cast<std::size_t>(l.cut)];
}

// Non-uniform three-point second difference along master direction k.
SecondDifference second_difference(const GridDomain& dom, const GridField& u, std::size_t cell, int k, double u0) {
  const auto& d = GridDomain::direction_table()[static_cast<std::size_t>(k)];
  const double len = std::hypot(d[0], d[1]) * dom.h;
  const Link& lp = dom.link(cell, 2 * k);
  const Link& lm = dom.link(cell, 2 * k + 1);
  const double hp = lp.frac * len;
  const double hm = lm.frac * len;
  SecondDifference sd;
  sd.w_plus = 2.0 / (hp * (hp + hm));
  sd.w_minus = 2.0 / (hm * (hp + hm));
  sd.plus = {lp.node, lp.cut, 0.0};
  sd.minus = {lm.node, lm.cut, 0.0};
  const double up = link_value(dom, u, lp);
  const double um = link_value(dom, u, lm);
  sd.delta = sd.w_plus * (up - u0) + sd.w_minus * (um - u0);
  return sd;
}

double one_sided_derivative(const GridDomain& dom, const GridField& u, std::size_t cell, int k, double u0) {
  const auto& d = GridDomain::direction_table()[static_cast<std::size_t>(k)];
  const double len = std::hypot(d[0], d[1]) * dom.h;
  const Link& lp = dom.link(cell, 2 * k);
  const Link& lm = dom.link(cell, 2 * k + 1);
  const double hp = lp.frac * len;
  const double hm = lm.frac * len;
  const double up = link_value(dom, u, lp);
  const double um = link_value(dom, u, lm);
  return (hm * hm * (up - u0) + hp * hp * (u0 - um)) / (hp * hm * (hp + hm));
}

double gradient_factor(const PucciParams& p, double grad_norm) {
  if (p.alpha == 0.0) return 1.0;
  if (p.alpha < 0.0) return std::pow(std::max(grad_norm, kGradientFloor), p.alpha);
  return std::pow(grad_norm, p.alpha);
}

}  // namespace

std::vector<std::array<int, 2>> resolve_pairs(const StencilSet& stencil) {
  if (!stencil.valid()) throw Error(ErrorCode::InvalidParameters, "stencil set is not a valid family of orthogonal pairs");
  std::vector<std::array<int, 2>> out;
  out.reserve(stencil.pairs.size());
  for (const auto& [first, second] : stencil.pairs) {
    const auto& d1 = stencil.directions[static_cast<std::size_t>(first)];
    const auto& d2 = stencil.directions[static_cast<std::size_t>(second)];
    out.push_back({GridDomain::direction_index(d1[0], d1[1]), GridDomain::direction_index(d2[0], d2[1])});
  }
  return out;
}

CellLinearization linearize_cell(const PucciParams& p, const GridDomain& dom, const GridField& u,
                                 const std::vector<std::array<int, 2>>& pairs, std::size_t cell) {
  const double u0 = u.at_cell(dom, cell);
  CellLinearization out;
  double best = 0.0;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    double sum = 0.0;
    CellLinearization cand;
    for (int m = 0; m < 2; ++m) {
      const SecondDifference sd = second_difference(dom, u, cell, pairs[q][static_cast<std::size_t>(m)], u0);
      const double c = extremal_weight(p.variant, p.a, p.A, sd.delta);
      sum += c * sd.delta;
      cand.diag -= c * (sd.w_plus + sd.w_minus);
      cand.neighbors[static_cast<std::size_t>(2 * m)] = {sd.plus.cell, sd.plus.cut, c * sd.w_plus};
      cand.neighbors[static_cast<std::size_t>(2 * m + 1)] = {sd.minus.cell, sd.minus.cut, c * sd.w_minus};
    }
    const bool better = q == 0 || (p.variant == Variant::Plus ? sum > best : sum < best);
    if (better) {
      best = sum;
      cand.pair = static_cast<int>(q);
      out = cand;
    }
  }
  if (p.alpha != 0.0) {
    const Vec2 g = gradient_at(dom, u, cell);
    out.grad_factor = gradient_factor(p, g.norm());
  }
  out.value = out.grad_factor * best;
  return out;
}

}  // namespace detail

Vec2 gradient_at(const GridDomain& dom, const GridField& u, std::size_t cell) {
  const double u0 = u.at_cell(dom, cell);
  const double gx = detail::one_sided_derivative(dom, u, cell, 0, u0);
  // master direction 8 is (0, -1)
  const double gy = -detail::one_sided_derivative(dom, u, cell, 8, u0);
  return {gx, gy};
}

GridField discretize_F(const PucciParams& p, const GridDomain& dom, const GridField& u, const StencilSet& stencil) {
  p.validate();
  const auto pairs = detail::resolve_pairs(stencil);
  GridField out = zero_field(dom);
  out.boundary_values = u.boundary_values;
  parallel_for(dom.cell_count(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t cell = begin; cell < end; ++cell) {
      out.values[static_cast<std::size_t>(dom.node_of_cell[cell])] = detail::linearize_cell(p, dom, u, pairs, cell).value;
    }
  });
  return out;
}

}  // namespace pucci::grid
