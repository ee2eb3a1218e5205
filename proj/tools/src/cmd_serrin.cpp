#include <algorithm>
#include <cmath>
#include <numbers>

#include "common.hpp"
#include "pucci/grid_diagnostics.hpp"
#include "pucci/grid_solver.hpp"
#include "pucci_lab/checks.hpp"
#include "pucci_lab/commands.hpp"

namespace pucci::lab {

namespace {

grid::Vec2 unit(double degrees) {
  const double t = degrees * std::numbers::pi / 180.0;
  return {std::cos(t), std::sin(t)};
}

void write_trace(const std::filesystem::path& file, const std::vector<grid::TraceSample>& trace,
                 const EllipseTorsion* exact, double scale) {
  std::vector<std::vector<double>> rows;
  for (const auto& s : trace) {
    std::vector<double> row{s.arc, s.point.x, s.point.y, s.dn};
    if (exact) row.push_back(scale * exact->normal_derivative(s.point));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> header{"arc", "x", "y", "dn"};
  if (exact) header.push_back("dn_exact");
  write_csv(file, header, rows);
}

}  // namespace

RunReport cmd_serrin(ExperimentConfig& cfg) {
  using detail::require;
  const PucciParams p = detail::read_params(cfg);
  const double h = cfg.number("h", 0.01);
  const double R = cfg.number("R", 1.0);
  const auto axes = cfg.numbers("ellipse", {2.0, 1.0});
  const auto directions = cfg.numbers("directions_deg", {0.0, 30.0, 45.0, 60.0, 90.0, 135.0});
  const int t_samples = cfg.integer("t_samples", 9);
  const double oblique = cfg.number("oblique_direction_deg", 45.0);
  const double std_tol = cfg.number("trace_std_tolerance", 5e-3);
  const double spread_min = cfg.number("trace_spread_min", 0.2);
  const double exact_tol = cfg.number("exact_tolerance", 5e-3);
  const int hessian_points = cfg.integer("hessian_points", 16);
  const double hessian_tol = cfg.number("hessian_tolerance", p.a == p.A ? 5e-3 : 2e-2);
  const bool experimental = cfg.flag("experimental_alpha", false);
  require(axes.size() == 2 && axes[0] > 0.0 && axes[1] > 0.0, "ellipse must be [ax, ay] with positive axes");
  require(R > 0.0 && h > 0.0 && h < 0.1 * std::min({R, axes[0], axes[1]}), "h must be below a tenth of every axis");
  require(t_samples >= 1 && hessian_points >= 1, "t_samples and hessian_points must be positive");
  if (p.alpha != 0.0 && !experimental) throw Error(ErrorCode::Unsupported, "grid solves need alpha = 0");
  cfg.reject_unknown();

  RunReport rep;
  rep.command = "serrin";
  rep.parameters = cfg.effective();

  grid::SolveOptions opts;
  opts.experimental_alpha = experimental;
  const auto f = grid::Source::constant(1.0);
  const auto zero = grid::BoundaryData::constant(0.0);
  // both exact solutions have negative definite Hessians, so the operator
  // acts as w * Laplacian with w the weight of negative eigenvalues
  const double w = extremal_weight(p.variant, p.a, p.A, -1.0);
  const bool exact_available = p.alpha == 0.0;
  const double gap_tol = 2.0 * h;

  // disk
  const auto disk = grid::build_domain(grid::Disk{R}, h);
  const auto ud = grid::solve_dirichlet(p, disk, f, zero, opts);
  const auto dtrace = grid::neumann_trace(disk, ud.u);
  const auto dstats = grid::trace_stats(dtrace);
  write_trace(cfg.output_dir / "disk_trace.csv", dtrace, nullptr, 1.0);
  rep.results["disk"] = {{"cells", disk.cell_count()},
                         {"iterations", ud.iterations},
                         {"center", grid::interpolate(disk, ud.u, {0.0, 0.0})},
                         {"trace_mean", dstats.mean},
                         {"trace_std", dstats.stddev},
                         {"trace_spread", dstats.spread()}};
  rep.add_at_most("disk_trace_std", dstats.stddev, std_tol);
  if (exact_available) {
    double err = 0.0;
    for (std::size_t c = 0; c < disk.cell_count(); ++c) {
      const auto x = disk.cell_position(c);
      err = std::max(err, std::abs(ud.u.at_cell(disk, c) - (R * R - x.dot(x)) / (4.0 * w)));
    }
    rep.results["disk"]["max_error"] = err;
    rep.add_at_most("disk_vs_exact", err, exact_tol);
  }

  std::vector<std::vector<double>> gap_rows;
  double worst = -HUGE_VAL;
  for (double deg : directions) {
    const auto e = unit(deg);
    const auto cp = grid::critical_position(disk, e);
    for (double t : sweep_positions(cp, h, t_samples)) {
      const double g = grid::reflection_gap(disk, ud.u, e, t);
      worst = std::max(worst, g);
      gap_rows.push_back({deg, t, g, cp.t_star, cp.margin});
    }
  }
  write_csv(cfg.output_dir / "disk_gaps.csv", {"direction_deg", "t", "gap", "t_star", "margin"}, gap_rows);
  rep.results["disk"]["max_gap"] = json_number(worst);
  rep.add_at_most("disk_reflection_gaps", worst, gap_tol);

  // ellipse
  const EllipseTorsion torsion{axes[0], axes[1]};
  const auto ell = grid::build_domain(grid::Ellipse{axes[0], axes[1]}, h);
  const auto ue = grid::solve_dirichlet(p, ell, f, zero, opts);
  const auto etrace = grid::neumann_trace(ell, ue.u);
  const auto estats = grid::trace_stats(etrace);
  write_trace(cfg.output_dir / "ellipse_trace.csv", etrace, exact_available ? &torsion : nullptr, 1.0 / w);
  rep.results["ellipse"] = {{"cells", ell.cell_count()},
                            {"iterations", ue.iterations},
                            {"center", grid::interpolate(ell, ue.u, {0.0, 0.0})},
                            {"trace_mean", estats.mean},
                            {"trace_std", estats.stddev},
                            {"trace_spread", estats.spread()}};
  rep.add("ellipse_trace_spread", estats.spread() >= spread_min, estats.spread(), spread_min);
  if (exact_available) {
    double err = 0.0;
    double trace_err = 0.0;
    for (std::size_t c = 0; c < ell.cell_count(); ++c) {
      err = std::max(err, std::abs(ue.u.at_cell(ell, c) - torsion.value(ell.cell_position(c)) / w));
    }
    for (const auto& s : etrace) trace_err = std::max(trace_err, std::abs(s.dn - torsion.normal_derivative(s.point) / w));
    rep.results["ellipse"]["max_error"] = err;
    rep.results["ellipse"]["trace_max_error"] = trace_err;
    rep.add_at_most("ellipse_vs_exact", err, exact_tol);
  }
  const auto e1 = grid::critical_position(ell, {1.0, 0.0});
  double e1_gap = -HUGE_VAL;
  for (double t : sweep_positions(e1, h, t_samples)) e1_gap = std::max(e1_gap, grid::reflection_gap(ell, ue.u, {1.0, 0.0}, t));
  rep.results["ellipse"]["e1_max_gap"] = json_number(e1_gap);
  rep.add_at_most("ellipse_e1_reflection_gaps", e1_gap, gap_tol);
  // the oblique direction is not a symmetry axis; the gap is a regression value
  const auto pg = grid::reflection_gap_partial(ell, ue.u, unit(oblique), 0.0);
  rep.results["ellipse"]["oblique_gap"] = {
      {"direction_deg", oblique}, {"t", 0.0}, {"gap", json_number(pg.gap)}, {"points", pg.points}, {"outside", pg.outside}};

  // boundary Hessian against the radial closed form
  if (p.variant == Variant::Plus) {
    const auto hc = boundary_hessian_crosscheck(p, R, hessian_points);
    rep.results["boundary_hessian"] = {
        {"max_error", hc.max_error}, {"points", hc.points}, {"sign_pattern_confirmed", hc.pattern_confirmed}};
    if (hc.pattern_confirmed) rep.add_at_most("boundary_hessian", hc.max_error, hessian_tol);
  }
  return rep;
}

}  // namespace pucci::lab
