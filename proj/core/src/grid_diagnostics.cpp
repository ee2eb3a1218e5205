#include "pucci/grid_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pucci/error.hpp"
#include "pucci/grid_operator.hpp"

namespace pucci::grid {

namespace {

constexpr double kInsideTolerance = 1e-9;

double node_value(const GridDomain& dom, const GridField& u, int i, int j) {
  if (i < 0 || j < 0 || i >= dom.nx || j >= dom.ny) return 0.0;
  const auto node = static_cast<std::size_t>(j * dom.nx + i);
  return dom.mask[node] ? u.values[node] : 0.0;
}

}  // namespace

double interpolate(const GridDomain& dom, const GridField& u, Vec2 p) {
  const double gx = p.x / dom.h - dom.i0;
  const double gy = p.y / dom.h - dom.j0;
  const double fi = std::floor(gx);
  const double fj = std::floor(gy);
  const double s = gx - fi;
  const double t = gy - fj;
  const int i = static_cast<int>(fi);
  const int j = static_cast<int>(fj);
  return (1.0 - s) * (1.0 - t) * node_value(dom, u, i, j) + s * (1.0 - t) * node_value(dom, u, i + 1, j) +
         (1.0 - s) * t * node_value(dom, u, i, j + 1) + s * t * node_value(dom, u, i + 1, j + 1);
}

std::vector<TraceSample> neumann_trace(const GridDomain& dom, const GridField& u) {
  const double l = 2.0 * dom.h;
  std::vector<TraceSample> out;
  out.reserve(dom.boundary.size());
  for (const BoundarySample& b : dom.boundary) {
    const double u1 = interpolate(dom, u, b.point - b.normal * l);
    const double u2 = interpolate(dom, u, b.point - b.normal * (2.0 * l));
    // derivative along the inner normal is (-3 u0 + 4 u1 - u2) / (2l) with u0 = 0
    out.push_back({b.arc, b.point, -(4.0 * u1 - u2) / (2.0 * l)});
  }
  return out;
}

TraceStats trace_stats(const std::vector<TraceSample>& trace) {
  TraceStats s;
  if (trace.empty()) return s;
  s.min = HUGE_VAL;
  s.max = -HUGE_VAL;
  double sum = 0.0;
  for (const auto& t : trace) {
    sum += t.dn;
    s.min = std::min(s.min, t.dn);
    s.max = std::max(s.max, t.dn);
  }
  s.mean = sum / static_cast<double>(trace.size());
  double var = 0.0;
  for (const auto& t : trace) var += (t.dn - s.mean) * (t.dn - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(trace.size()));
  return s;
}

Vec2 reflect(Vec2 x, Vec2 e, double t) { return x + e * (2.0 * (t - x.dot(e))); }

CriticalPosition critical_position(const GridDomain& dom, Vec2 e) {
  CriticalPosition cp;
  cp.margin = 2.0 * dom.h;
  cp.t_min = HUGE_VAL;
  // The mirror of y across {x.e = t} stays inside while 2 (t - y.e) does not
  // exceed the exit distance of the ray from y along e.
  double t_limit = HUGE_VAL;
  for (std::size_t c = 0; c < dom.cell_count(); ++c) {
    const Vec2 y = dom.cell_position(c);
    const double ye = y.dot(e);
    cp.t_min = std::min(cp.t_min, ye);
    const auto exit = ray_exit(dom.shape, y, e);
    if (exit) t_limit = std::min(t_limit, ye + 0.5 * (*exit));
  }
  const double step = 0.5 * dom.h;
  const double k = std::floor((t_limit - cp.t_min) / step + 1e-9);
  cp.t_star = cp.t_min + std::max(0.0, k) * step;
  return cp;
}

namespace {

template <class OnOutside>
PartialGap gap_impl(const GridDomain& dom, const GridField& u, Vec2 e, double t, OnOutside on_outside) {
  PartialGap out;
  for (std::size_t c = 0; c < dom.cell_count(); ++c) {
    const Vec2 y = dom.cell_position(c);
    if (y.dot(e) >= t) continue;
    if (!contains(dom.shape, reflect(y, e, t), kInsideTolerance)) {
      on_outside(y);
      ++out.outside;
    }
  }
  out.gap = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < dom.cell_count(); ++c) {
    const Vec2 x = dom.cell_position(c);
    if (x.dot(e) <= t) continue;
    const Vec2 m = reflect(x, e, t);
    if (!contains(dom.shape, m)) continue;
    out.gap = std::max(out.gap, interpolate(dom, u, m) - u.at_cell(dom, c));
    ++out.points;
  }
  return out;
}

}  // namespace

double reflection_gap(const GridDomain& dom, const GridField& u, Vec2 e, double t) {
  return gap_impl(dom, u, e, t, [&](Vec2 y) {
           throw Error(ErrorCode::ReflectionOutOfDomain,
                       "mirror of (" + std::to_string(y.x) + ", " + std::to_string(y.y) + ") across t = " +
                           std::to_string(t) + " leaves the domain");
         })
      .gap;
}

PartialGap reflection_gap_partial(const GridDomain& dom, const GridField& u, Vec2 e, double t) {
  return gap_impl(dom, u, e, t, [](Vec2) {});
}

ComparisonCase comparison_case(const radial::SourceSpec& spec, double alpha) {
  using Kind = radial::SourceSpec::Kind;
  spec.validate(alpha);
  switch (spec.kind) {
    case Kind::Constant:
      if (spec.k >= 0.0) return ComparisonCase::NonincreasingSource;
      break;
    case Kind::EigenPower:
      return spec.lambda <= 0.0 ? ComparisonCase::NonincreasingSource : ComparisonCase::SublinearSource;
    case Kind::PowerPair:
      if (spec.lambda <= 0.0) return ComparisonCase::NonincreasingSource;
      if (spec.mu >= 0.0 && spec.beta > 1.0 + alpha) return ComparisonCase::SublinearSource;
      break;
  }
  throw Error(ErrorCode::HypothesisViolation, "source satisfies neither comparison hypothesis");
}

ComparisonReport comparison_check(const PucciParams& p, const radial::SourceSpec& spec, const GridDomain& dom,
                                  const BoundaryData& g1, const BoundaryData& g2, const SolveOptions& options) {
  ComparisonReport r;
  r.hypothesis = comparison_case(spec, p.alpha);
  for (const CutPoint& cut : dom.cuts) {
    if (g1.g(cut.point) > g2.g(cut.point)) {
      throw Error(ErrorCode::InvalidParameters, "comparison needs g1 <= g2 on the boundary");
    }
  }
  const Source f = Source::from_spec(spec, p.alpha);
  const GridField u1 = solve_dirichlet(p, dom, f, g1, options).u;
  const GridField u2 = solve_dirichlet(p, dom, f, g2, options).u;
  for (std::size_t c = 0; c < dom.cell_count(); ++c) r.gap = std::max(r.gap, u1.at_cell(dom, c) - u2.at_cell(dom, c));
  r.threshold = 2.0 * dom.h * max_abs_interior(dom, u2);
  r.pass = r.gap <= r.threshold;
  return r;
}

SmallDomainReport small_domain_check(const PucciParams& p, double L, const Shape& base,
                                     const SmallDomainOptions& options) {
  p.validate();
  if (p.alpha != 0.0) throw Error(ErrorCode::Unsupported, "small-domain check is run for alpha = 0");
  if (options.sizes < 1 || !(options.shrink > 0.0 && options.shrink < 1.0) || options.cells_per_diameter < 8) {
    throw Error(ErrorCode::InvalidParameters, "invalid small-domain sweep");
  }
  SmallDomainReport rep;
  rep.L = L;
  const PucciParams plus{p.a, p.A, Variant::Plus, 0.0};
  if (L <= 0.0) {
    rep.predicted_diameter = std::numeric_limits<double>::infinity();
  } else {
    // a positive strict supersolution of M^+ + L on the enclosing ball is the
    // barrier, so the threshold is the positive-eigenfunction eigenvalue of M^+
    // a threshold needs no more than ~1e-8 relative accuracy
    radial::EigenOptions coarse;
    coarse.relative_step = 1e-3;
    const double lambda_unit = radial::principal_eigenvalue_ball(plus, 2, 1.0, coarse);
    rep.predicted_diameter = std::sqrt(3.0) * std::sqrt(lambda_unit / L);
  }

  double scale = 1.0;
  for (int k = 0; k < options.sizes; ++k, scale *= options.shrink) {
    SmallDomainTrial trial;
    trial.scale = scale;
    const Shape shape = scaled(base, scale);
    trial.diameter = diameter(shape);
    trial.h = trial.diameter / options.cells_per_diameter;
    trial.predicted = trial.diameter < rep.predicted_diameter;
    const GridDomain dom = build_domain(shape, trial.h);
    try {
      const GridField w = solve_dirichlet(plus, dom, Source::affine(L, -1.0), BoundaryData::constant(0.0)).u;
      trial.max_w = -HUGE_VAL;
      for (std::size_t c = 0; c < dom.cell_count(); ++c) trial.max_w = std::max(trial.max_w, w.at_cell(dom, c));
      trial.pass = trial.max_w <= options.tolerance;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IterationLimit) throw;
      trial.max_w = std::numeric_limits<double>::infinity();
      trial.pass = false;
    }
    rep.trials.push_back(trial);
  }

  bool predicted_ok = true;
  for (const auto& t : rep.trials) {
    if (t.predicted && !t.pass) predicted_ok = false;
  }
  // trials run from large to small
  for (auto it = rep.trials.rbegin(); it != rep.trials.rend() && it->pass; ++it) rep.empirical_diameter = it->diameter;
  rep.pass = predicted_ok && rep.empirical_diameter.has_value();
  return rep;
}

}  // namespace pucci::grid
