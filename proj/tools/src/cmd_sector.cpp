#include <cmath>
#include <numbers>

#include "common.hpp"
#include "pucci/sector.hpp"
#include "pucci_lab/commands.hpp"

namespace pucci::lab {

namespace {

void write_field(const std::filesystem::path& file, const sector::SectorMesh& mesh, const sector::SectorField& psi) {
  std::vector<std::vector<double>> rows;
  const int n2 = mesh.N == 3 ? mesh.intervals[1] : 0;
  for (int j = 0; j <= n2; ++j) {
    for (int i = 0; i <= mesh.intervals[0]; ++i) {
      const auto th = mesh.theta(i, j);
      const double v = psi.values[mesh.node_index(i, j)];
      rows.push_back(mesh.N == 3 ? std::vector<double>{th[0], th[1], v} : std::vector<double>{th[0], v});
    }
  }
  write_csv(file, mesh.N == 3 ? std::vector<std::string>{"theta1", "theta2", "psi"} : std::vector<std::string>{"theta1", "psi"},
            rows);
}

}  // namespace

RunReport cmd_sector(ExperimentConfig& cfg) {
  using detail::require;
  const int N = cfg.integer("N", 2);
  if (N != 2 && N != 3) throw Error(ErrorCode::Unsupported, "sectors are implemented for N = 2 and 3");
  const double A = cfg.number("A", 1.0);
  const auto ratios = cfg.numbers("ratios", {1.0, 0.9});
  const double epsilon = cfg.number("epsilon", 0.0);
  const double delta = cfg.number("delta", 0.2);
  const double spacing = cfg.number("spacing", std::numbers::pi / 400.0);
  const double lambda_tol = cfg.number("lambda_tolerance", N == 2 ? 0.01 : 0.02);
  const auto triples = cfg.rows("gamma_triples", {{0.9, 0.1, 0.2}, {0.95, 0.01, 0.1}, {0.99, 1e-3, 0.02}});
  const double gamma_tol = cfg.number("gamma_tolerance", 0.02);
  const double residual_tol = cfg.number("residual_tolerance", 1e-5);
  const int barrier_samples = cfg.integer("barrier_samples", 100);
  require(A > 0.0, "A must be positive");
  require(spacing > 0.0 && spacing < 0.1, "spacing must be in (0, 0.1)");
  require(epsilon >= 0.0, "epsilon must be non-negative");
  require(barrier_samples >= 0, "barrier_samples must be non-negative");
  for (double r : ratios) sector::SectorOperatorParams{r * A, A, 2.0, epsilon}.validate();
  sector::SectorMesh::build(N, delta, spacing);
  for (const auto& t : triples) {
    require(t.size() == 3, "gamma_triples rows are [a/A, epsilon, delta]");
    sector::SectorOperatorParams{t[0] * A, A, 2.0, t[1]}.validate();
    sector::SectorMesh::build(N, t[2], spacing);
  }
  cfg.reject_unknown();

  RunReport rep;
  rep.command = "sector";
  rep.parameters = cfg.effective();
  rep.results["normalization"] = "sup";
  rep.results["records"] = nlohmann::json::array();
  const double target = 2.0 * N * A;

  for (std::size_t k = 0; k < ratios.size(); ++k) {
    const double a = ratios[k] * A;
    const sector::SectorOperatorParams sp{a, A, 2.0, epsilon};
    const auto ex = sector::extrapolated_eigenvalue(sp, N, delta, spacing);
    rep.results["records"].push_back({{"a", a},
                                      {"A", A},
                                      {"epsilon", epsilon},
                                      {"delta", 0.0},
                                      {"N", N},
                                      {"lambda_bar", ex.lambda0},
                                      {"lambda_at_delta", ex.lambdas},
                                      {"deltas", ex.deltas},
                                      {"gamma", 2.0},
                                      {"gamma_root", sector::exponent_root(a, N, epsilon + ex.lambda0)}});
    const std::string label = "[" + detail::tag("a/A", ratios[k]) + "]";
    if (a == A) {
      rep.add_at_most("quarter_sphere_2NA" + label, std::abs(ex.lambda0 - target) / target, lambda_tol);
    } else {
      rep.add("above_2NA" + label, ex.lambda0 > target, ex.lambda0, target);
    }
  }

  std::vector<double> distance;
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const double a = triples[k][0] * A;
    const double eps = triples[k][1];
    const double d = triples[k][2];
    sector::GammaOptions go;
    go.spacing = spacing;
    const auto g = sector::gamma_exponent(a, A, eps, d, N, go);
    distance.push_back(std::abs(g.gamma - 2.0));
    const std::string label = "[" + std::to_string(k) + "]";
    rep.results["records"].push_back({{"a", a},
                                      {"A", A},
                                      {"epsilon", eps},
                                      {"delta", d},
                                      {"N", N},
                                      {"lambda_bar", g.lambda_bar},
                                      {"gamma", g.gamma},
                                      {"iterations", g.iterations},
                                      {"residual", g.residual}});
    rep.add_at_most("gamma_residual" + label, std::abs(g.residual), residual_tol);
    if (a < A) rep.add("gamma_above_2" + label, g.gamma > 2.0, g.gamma, 2.0);
    if (barrier_samples > 0) {
      const auto bc = sector::barrier_inequality_check({a, A, g.gamma, eps}, g.mesh, g.psi, barrier_samples,
                                                       cfg.seed + k);
      rep.add("barrier" + label, bc.pass, bc.min_margin, -bc.tolerance);
    }
    write_field(cfg.output_dir / ("sector_psi_" + std::to_string(k) + ".csv"), g.mesh, g.psi);
  }
  if (!distance.empty()) {
    bool monotone = true;
    for (std::size_t k = 1; k < distance.size(); ++k) monotone = monotone && distance[k] < distance[k - 1];
    rep.add("gamma_distance_decreasing", monotone, distance.back(), distance.front());
    rep.add_at_most("gamma_limit", distance.back(), gamma_tol);
  }
  return rep;
}

}  // namespace pucci::lab
