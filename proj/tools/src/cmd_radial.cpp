#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "pucci/radial.hpp"
#include "pucci_lab/commands.hpp"

namespace pucci::lab {

namespace {

struct ClosedFormComparison {
  double radius = 0.0;  // ball whose closed form starts at m
  double error = 0.0;   // sup |u - phi| on [0, radius]
  double zero_error = 0.0;
  bool pattern = false;
};

ClosedFormComparison compare_closed_form(const PucciParams& p, int N, double m, const radial::RadialProfile& prof) {
  ClosedFormComparison out;
  const double q = (2.0 + p.alpha) / (1.0 + p.alpha);
  out.radius = std::pow(m / radial::closed_form_constant(p, N, 1.0, 0.0), 1.0 / q);
  out.pattern = p.a == p.A || prof.negative_hessian_pattern();
  for (std::size_t i = 0; i < prof.size() && prof.radii[i] <= out.radius; ++i) {
    out.error = std::max(out.error, std::abs(prof.u[i] - radial::closed_form_constant(p, N, out.radius, prof.radii[i])));
  }
  out.zero_error = prof.first_zero ? std::abs(*prof.first_zero - out.radius) : HUGE_VAL;
  out.error = std::max(out.error, out.zero_error);
  return out;
}

}  // namespace

RunReport cmd_radial(ExperimentConfig& cfg) {
  using detail::require;
  const PucciParams p = detail::read_params(cfg);
  const int N = cfg.integer("N", 2);
  const double R = cfg.number("R", 1.0);
  const double k = cfg.number("k", 1.0);
  const double h = cfg.number("h", 1e-4);
  const double tol = cfg.number("tolerance", 1e-5);
  const bool sweep = cfg.flag("sweep", true);
  const auto alphas = cfg.numbers("sweep_alpha", {-0.5, 0.0, 1.0});
  const auto dims = detail::as_ints(cfg.numbers("sweep_N", {2, 3}), "sweep_N");
  require(N >= 2, "N must be at least 2");
  require(R > 0.0 && h > 0.0 && h < R, "need R > 0 and 0 < h < R");
  for (int d : dims) require(d >= 2, "sweep_N entries must be at least 2");
  for (double al : alphas) PucciParams{p.a, p.A, Variant::Plus, al}.validate();
  const bool closed = p.variant == Variant::Plus && k == 1.0;
  const double m = cfg.number("m", closed ? radial::closed_form_constant(p, N, R, 0.0) : 1.0);
  require(m > 0.0, "center value m must be positive");
  cfg.reject_unknown();

  RunReport rep;
  rep.command = "radial";
  rep.parameters = cfg.effective();

  const auto prof = radial::shoot(p, N, radial::SourceSpec::constant(k), m, 1.5 * R, h);
  rep.results["first_zero"] = prof.first_zero ? json_number(*prof.first_zero) : nlohmann::json();
  rep.results["degenerate"] = prof.degenerate;
  rep.results["samples"] = prof.size();

  std::vector<std::vector<double>> rows;
  ClosedFormComparison cmp;
  if (closed) cmp = compare_closed_form(p, N, m, prof);
  for (std::size_t i = 0; i < prof.size(); ++i) {
    std::vector<double> row{prof.radii[i], prof.u[i], prof.du[i]};
    if (closed) {
      row.push_back(prof.radii[i] <= cmp.radius ? radial::closed_form_constant(p, N, cmp.radius, prof.radii[i])
                                                : std::nan(""));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::string> header{"r", "u", "du"};
  if (closed) header.push_back("closed_form");
  write_csv(cfg.output_dir / "radial_profile.csv", header, rows);

  if (prof.degenerate) {
    double dev = 0.0;
    for (double u : prof.u) dev = std::max(dev, std::abs(u - m));
    rep.add_at_most("constant_profile", dev, 0.0);
  } else if (closed) {
    rep.results["closed_form_radius"] = cmp.radius;
    rep.results["closed_form_error"] = json_number(cmp.error);
    rep.results["sign_pattern_confirmed"] = cmp.pattern;
    if (cmp.pattern) rep.add_at_most("closed_form", cmp.error, tol);
  }

  if (sweep) {
    rep.results["sweep"] = nlohmann::json::array();
    for (double al : alphas) {
      for (int d : dims) {
        const PucciParams q{p.a, p.A, Variant::Plus, al};
        const double mq = radial::closed_form_constant(q, d, R, 0.0);
        const auto pr = radial::shoot(q, d, radial::SourceSpec::constant(1.0), mq, 1.5 * R, h);
        const auto c = compare_closed_form(q, d, mq, pr);
        rep.results["sweep"].push_back({{"alpha", al},
                                        {"N", d},
                                        {"error", json_number(c.error)},
                                        {"sign_pattern_confirmed", c.pattern}});
        if (c.pattern) rep.add_at_most("closed_form[" + detail::tag("alpha", al) + "," + detail::tag("N", d) + "]", c.error, tol);
      }
    }
  }
  return rep;
}

RunReport cmd_overdetermined(ExperimentConfig& cfg) {
  using detail::require;
  const PucciParams p = detail::read_params(cfg);
  const int N = cfg.integer("N", 2);
  const double c = cfg.number("c", -0.5);
  const double h = cfg.number("h", 1e-4);
  const double tol = cfg.number("tolerance", 1e-5);
  const double lap_tol = cfg.number("laplacian_tolerance", 1e-10);
  const bool sweep = cfg.flag("sweep", true);
  const auto alphas = cfg.numbers("sweep_alpha", {-0.5, 0.0, 1.0});
  const auto dims = detail::as_ints(cfg.numbers("sweep_N", {2, 3}), "sweep_N");
  if (p.variant != Variant::Plus) throw Error(ErrorCode::Unsupported, "the c-R relation is written for M^+");
  if (!(c < 0.0)) throw Error(ErrorCode::InvalidNeumannData, "positive solutions need c < 0");
  require(N >= 2, "N must be at least 2");
  require(h > 0.0, "h must be positive");
  for (int d : dims) require(d >= 2, "sweep_N entries must be at least 2");
  for (double al : alphas) PucciParams{p.a, p.A, Variant::Plus, al}.validate();
  cfg.reject_unknown();

  RunReport rep;
  rep.command = "overdetermined";
  rep.parameters = cfg.effective();
  std::vector<std::vector<double>> rows;

  // relation c <-> R, then the shooting solution on B_R read back through it
  auto round_trip = [&](const PucciParams& q, int d, double cc, const std::string& label) {
    const double Rc = radial::overdetermined_radius(q, d, cc);
    const double c_back = radial::neumann_from_radius(q, d, Rc);
    const double m = radial::closed_form_constant(q, d, Rc, 0.0);
    const auto prof = radial::shoot(q, d, radial::SourceSpec::constant(1.0), m, 1.5 * Rc, h * Rc);
    const double c_shoot = radial::neumann_constant(prof);
    const double R_shoot = radial::overdetermined_radius(q, d, c_shoot);
    const bool pattern = q.a == q.A || prof.negative_hessian_pattern();
    rows.push_back({q.alpha, static_cast<double>(d), cc, Rc, c_back, c_shoot, R_shoot, *prof.first_zero});
    rep.add_at_most("relation" + label, std::abs(c_back - cc), 1e-12 * std::max(1.0, std::abs(cc)));
    if (pattern) rep.add_at_most("shoot_roundtrip" + label, std::abs(R_shoot - *prof.first_zero), tol);
    return nlohmann::json{{"alpha", q.alpha},       {"N", d},        {"c", cc},
                          {"R_c", Rc},              {"c_shoot", c_shoot}, {"R_shoot", R_shoot},
                          {"first_zero", *prof.first_zero}, {"sign_pattern_confirmed", pattern}};
  };

  rep.results["case"] = round_trip(p, N, c, "");
  if (p.a == 1.0 && p.A == 1.0 && p.alpha == 0.0) {
    const double Rc = radial::overdetermined_radius(p, N, c);
    rep.add_at_most("laplacian_c_eq_-R/N", std::abs(c + Rc / N), lap_tol);
  }

  if (sweep) {
    rep.results["sweep"] = nlohmann::json::array();
    for (double al : alphas) {
      for (int d : dims) {
        const PucciParams q{p.a, p.A, Variant::Plus, al};
        const std::string label = "[" + detail::tag("alpha", al) + "," + detail::tag("N", d) + "]";
        rep.results["sweep"].push_back(round_trip(q, d, radial::neumann_from_radius(q, d, 1.0), label));
      }
    }
    for (int d : dims) {
      const PucciParams lap{1.0, 1.0, Variant::Plus, 0.0};
      rep.add_at_most("laplacian_c_eq_-R/N[" + detail::tag("N", d) + "]",
                      std::abs(radial::neumann_from_radius(lap, d, 1.0) + 1.0 / d), lap_tol);
    }
  }
  write_csv(cfg.output_dir / "overdetermined.csv",
            {"alpha", "N", "c", "R_c", "c_from_R_c", "c_shoot", "R_shoot", "first_zero"}, rows);
  return rep;
}

}  // namespace pucci::lab
