#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "pucci/grid_solver.hpp"
#include "pucci/radial.hpp"
#include "pucci_lab/checks.hpp"
#include "pucci_lab/commands.hpp"

namespace pucci::lab {

RunReport cmd_eigen(ExperimentConfig& cfg) {
  using detail::require;
  const PucciParams p = detail::read_params(cfg);
  const int N = cfg.integer("N", 2);
  const double R = cfg.number("R", 1.0);
  auto radii = cfg.numbers("radii", {0.5, 1.0, 2.0});
  const bool grid = cfg.flag("grid", N == 2 && p.alpha == 0.0);
  const double h = cfg.number("h", 0.01);
  const double bessel_tol = cfg.number("bessel_tolerance", 0.02);
  const double radial_tol = cfg.number("radial_tolerance", 0.03);
  const double ball_tol = cfg.number("ball_bessel_tolerance", 1e-6);
  const double scaling_tol = cfg.number("scaling_tolerance", 1e-6);
  require(N >= 2, "N must be at least 2");
  require(R > 0.0, "R must be positive");
  for (double r : radii) require(r > 0.0, "radii must be positive");
  if (grid) {
    if (N != 2) throw Error(ErrorCode::Unsupported, "grid eigenvalues are two-dimensional");
    if (p.alpha != 0.0) throw Error(ErrorCode::Unsupported, "grid eigenvalues require alpha = 0");
    require(h > 0.0 && h < 0.1 * R, "need 0 < h < R/10");
  }
  cfg.reject_unknown();

  RunReport rep;
  rep.command = "eigen";
  rep.parameters = cfg.effective();

  if (std::find(radii.begin(), radii.end(), R) == radii.end()) radii.push_back(R);
  std::sort(radii.begin(), radii.end());
  std::vector<std::vector<double>> rows;
  double lambda_R = 0.0;
  double lo = HUGE_VAL;
  double hi = -HUGE_VAL;
  rep.results["ball"] = nlohmann::json::array();
  for (double r : radii) {
    const double lam = radial::principal_eigenvalue_ball(p, N, r);
    const double scaled = lam * std::pow(r, 2.0 + p.alpha);
    if (r == R) lambda_R = lam;
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
    rows.push_back({r, lam, scaled});
    rep.results["ball"].push_back({{"R", r}, {"lambda", lam}, {"lambda_R^(2+alpha)", scaled}});
  }
  write_csv(cfg.output_dir / "eigen_ball.csv", {"R", "lambda", "lambda_scaled"}, rows);
  rep.add_at_most("scaling_invariance", (hi - lo) / hi, scaling_tol);

  const bool laplacian = p.a == p.A && p.alpha == 0.0 && N == 2;
  double bessel = 0.0;
  if (laplacian) {
    const double j0 = bessel_j0_first_zero();
    bessel = p.A * j0 * j0 / (R * R);
    rep.results["bessel"] = bessel;
    rep.add_at_most("ball_vs_bessel", std::abs(lambda_R - bessel) / bessel, ball_tol);
  }

  if (grid) {
    const auto dom = grid::build_domain(grid::Disk{R}, h);
    const auto eg = grid::principal_eigenvalue_grid(p, dom);
    double min_phi = HUGE_VAL;
    std::vector<std::vector<double>> field;
    for (std::size_t c = 0; c < dom.cell_count(); ++c) {
      const auto x = dom.cell_position(c);
      const double v = eg.phi.at_cell(dom, c);
      min_phi = std::min(min_phi, v);
      field.push_back({x.x, x.y, v});
    }
    write_csv(cfg.output_dir / "eigen_grid.csv", {"x", "y", "phi"}, field);
    rep.results["grid"] = {{"lambda", eg.lambda}, {"iterations", eg.iterations}, {"cells", dom.cell_count()}};
    rep.add("grid_positive", min_phi > 0.0, min_phi, 0.0);
    rep.add_at_most("grid_vs_ball", std::abs(eg.lambda - lambda_R) / lambda_R, radial_tol);
    if (laplacian) rep.add_at_most("grid_vs_bessel", std::abs(eg.lambda - bessel) / bessel, bessel_tol);
  }
  return rep;
}

}  // namespace pucci::lab
