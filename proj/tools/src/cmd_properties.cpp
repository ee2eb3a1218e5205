#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "common.hpp"
#include "pucci/grid_diagnostics.hpp"
#include "pucci/grid_operator.hpp"
#include "pucci/grid_solver.hpp"
#include "pucci_lab/commands.hpp"

namespace pucci::lab {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

struct Suite {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst = 0.0;  // largest violation seen

  void record(bool ok, double violation) {
    ++trials;
    if (!ok) ++failures;
    worst = std::max(worst, violation);
  }
};

PucciParams random_params(Rng& rng, bool with_alpha) {
  PucciParams p;
  p.a = uniform(rng, 0.2, 1.0);
  p.A = p.a * uniform(rng, 1.0, 3.0);
  p.variant = pick(rng, 2) ? Variant::Plus : Variant::Minus;
  p.alpha = with_alpha ? uniform(rng, -0.9, 2.0) : 0.0;
  return p;
}

SymMatrix random_matrix(Rng& rng, std::size_t dim) {
  SymMatrix X(dim);
  const double scale = std::pow(10.0, uniform(rng, -2.0, 2.0));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) X.set(i, j, scale * uniform(rng, -1.0, 1.0));
  }
  return X;
}

PucciParams with_variant(PucciParams p, Variant v) {
  p.variant = v;
  return p;
}

void operator_suites(Rng& rng, int trials, std::vector<Suite>& out) {
  Suite order{"operator_order"}, homog{"operator_homogeneity"}, dual{"operator_duality"},
      additive{"operator_sub_superadditivity"}, fhomog{"F_homogeneity"};
  for (int k = 0; k < trials; ++k) {
    const PucciParams p = random_params(rng, true);
    const std::size_t dim = 2 + static_cast<std::size_t>(pick(rng, 3));
    const SymMatrix X = random_matrix(rng, dim);
    const SymMatrix Y = random_matrix(rng, dim);
    const PucciParams plus = with_variant(p, Variant::Plus);
    const PucciParams minus = with_variant(p, Variant::Minus);
    const double tol = 1e-10 * p.A * (1.0 + X.max_abs() + Y.max_abs());

    const double mp = pucci(plus, X);
    const double mm = pucci(minus, X);
    order.record(mp >= mm - tol, std::max(0.0, mm - mp));

    const double t = uniform(rng, 0.0, 5.0);
    const double dh = std::max(std::abs(pucci(plus, X * t) - t * mp), std::abs(pucci(minus, X * t) - t * mm));
    homog.record(dh <= tol * (1.0 + t), dh);

    const double dd = std::abs(mp + pucci(minus, -X));
    dual.record(dd <= tol, dd);

    const double sub = pucci(plus, X + Y) - pucci(plus, X) - pucci(plus, Y);
    const double sup = pucci(minus, X) + pucci(minus, Y) - pucci(minus, X + Y);
    additive.record(sub <= tol && sup <= tol, std::max({0.0, sub, sup}));

    std::vector<double> grad(dim);
    for (double& g : grad) g = uniform(rng, -2.0, 2.0);
    const double s = uniform(rng, 0.1, 5.0);
    std::vector<double> sgrad(grad);
    for (double& g : sgrad) g *= s;
    const double f0 = f_operator(p, grad, X);
    const double f1 = f_operator(p, sgrad, X * s);
    const double expect = std::pow(s, 1.0 + p.alpha) * f0;
    const double df = std::abs(f1 - expect);
    fhomog.record(df <= 1e-10 * (1.0 + std::abs(expect)), df);
  }
  for (auto* s : {&order, &homog, &dual, &additive, &fhomog}) out.push_back(*s);
}

std::vector<grid::GridDomain> test_domains(double h) {
  std::vector<grid::GridDomain> out;
  out.push_back(grid::build_domain(grid::Disk{1.0}, h));
  out.push_back(grid::build_domain(grid::Ellipse{1.5, 1.0}, h));
  out.push_back(grid::build_domain(grid::Polygon{{{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}}, h));
  return out;
}

grid::GridField random_field(Rng& rng, const grid::GridDomain& dom) {
  grid::GridField u = grid::zero_field(dom);
  for (std::size_t c = 0; c < dom.cell_count(); ++c) {
    u.values[static_cast<std::size_t>(dom.node_of_cell[c])] = uniform(rng, -1.0, 1.0);
  }
  for (double& b : u.boundary_values) b = uniform(rng, -1.0, 1.0);
  return u;
}

using CellScheme = std::function<double(const PucciParams&, const grid::GridDomain&, const grid::GridField&, std::size_t)>;

// Adds -(4A/h^2) times the five-point Laplacian: neighbor coefficients along
// the axes turn negative, so the scheme is no longer monotone.
CellScheme broken_scheme(const CellScheme& base) {
  return [base](const PucciParams& p, const grid::GridDomain& dom, const grid::GridField& u, std::size_t c) {
    const double uc = u.at_cell(dom, c);
    double lap = 0.0;
    for (auto [dx, dy] : {std::array{1, 0}, std::array{0, 1}}) {
      bool flipped = false;
      const int k = grid::GridDomain::direction_index(dx, dy, &flipped);
      for (int s : {2 * k, 2 * k + 1}) {
        const auto& l = dom.link(c, s);
        const double v = l.node >= 0 ? u.at_cell(dom, static_cast<std::size_t>(l.node))
                                     : u.boundary_values[static_cast<std::size_t>(l.cut)];
        lap += v - uc;
      }
    }
    return base(p, dom, u, c) - 4.0 * p.A / (dom.h * dom.h) * lap;
  };
}

void scheme_suites(Rng& rng, int trials, bool inject, std::vector<Suite>& out) {
  const auto domains = test_domains(0.1);
  const grid::StencilSet stencil = grid::StencilSet::wide(3);
  const auto pairs = grid::detail::resolve_pairs(stencil);
  CellScheme scheme = [&pairs](const PucciParams& p, const grid::GridDomain& dom, const grid::GridField& u,
                               std::size_t c) { return grid::detail::linearize_cell(p, dom, u, pairs, c).value; };
  if (inject) scheme = broken_scheme(scheme);

  Suite mono{"scheme_monotone"}, dual{"scheme_duality"};
  for (int k = 0; k < trials; ++k) {
    const auto& dom = domains[static_cast<std::size_t>(pick(rng, static_cast<int>(domains.size())))];
    const PucciParams p = random_params(rng, false);
    grid::GridField u = random_field(rng, dom);
    const auto c = static_cast<std::size_t>(pick(rng, static_cast<int>(dom.cell_count())));
    const auto& l = dom.link(c, pick(rng, grid::GridDomain::kSignedDirections));
    const double before = scheme(p, dom, u, c);
    const double bump = uniform(rng, 0.01, 1.0);
    if (l.node >= 0) {
      u.values[static_cast<std::size_t>(dom.node_of_cell[static_cast<std::size_t>(l.node)])] += bump;
    } else {
      u.boundary_values[static_cast<std::size_t>(l.cut)] += bump;
    }
    const double after = scheme(p, dom, u, c);
    const double drop = before - after;
    mono.record(drop <= 1e-12 * (1.0 + std::abs(before)), std::max(0.0, drop));

    // Minus(u) == -Plus(-u) exactly
    PucciParams q = random_params(rng, false);
    q.alpha = uniform(rng, 0.0, 1.0);
    const grid::GridField v = random_field(rng, dom);
    grid::GridField w = v;
    for (double& x : w.values) x = -x;
    for (double& x : w.boundary_values) x = -x;
    const auto fm = grid::discretize_F(with_variant(q, Variant::Minus), dom, v, stencil);
    const auto fp = grid::discretize_F(with_variant(q, Variant::Plus), dom, w, stencil);
    double diff = 0.0;
    for (std::size_t i = 0; i < fm.values.size(); ++i) diff = std::max(diff, std::abs(fm.values[i] + fp.values[i]));
    dual.record(diff == 0.0, diff);
  }
  out.push_back(mono);
  out.push_back(dual);
}

radial::SourceSpec random_source(Rng& rng, int hypothesis, double a) {
  using radial::SourceSpec;
  // keeps lambda well below the principal eigenvalue of the test domains
  const double lam_max = 0.3 * a * 5.78;
  const int kind = pick(rng, hypothesis == 1 ? 3 : 2);
  if (hypothesis == 1) {
    if (kind == 0) return SourceSpec::constant(uniform(rng, 0.0, 2.0));
    if (kind == 1) return SourceSpec::eigen_power(uniform(rng, -3.0, 0.0));
    return SourceSpec::power_pair(uniform(rng, -3.0, 0.0), uniform(rng, 0.0, 1.0), uniform(rng, 1.1, 4.0));
  }
  if (kind == 0) return SourceSpec::eigen_power(uniform(rng, 0.0, lam_max));
  return SourceSpec::power_pair(uniform(rng, 0.0, lam_max), uniform(rng, 0.0, 1.0), uniform(rng, 1.1, 4.0));
}

void comparison_suite(Rng& rng, int trials, std::vector<Suite>& out, nlohmann::json& notes) {
  const auto domains = test_domains(0.05);
  Suite s{"comparison"};
  int by_case[2] = {0, 0};
  for (int k = 0; k < trials; ++k) {
    const auto& dom = domains[static_cast<std::size_t>(pick(rng, static_cast<int>(domains.size())))];
    const PucciParams p = random_params(rng, false);
    const int hyp = 1 + pick(rng, 2);
    const auto spec = random_source(rng, hyp, p.a);
    // case 2 is about positive solutions, so its data stays nonnegative
    const double c0 = hyp == 1 ? uniform(rng, -1.0, 1.0) : uniform(rng, 0.0, 1.0);
    const double c1 = uniform(rng, -1.0, 1.0) * std::abs(c0) / 3.0;
    const double c2 = uniform(rng, -1.0, 1.0) * std::abs(c0) / 3.0;
    const double d = pick(rng, 4) == 0 ? 0.0 : uniform(rng, 0.0, 0.3);
    const grid::BoundaryData g1{[=](grid::Vec2 x) { return c0 + c1 * x.x + c2 * x.y; }};
    const grid::BoundaryData g2{[=](grid::Vec2 x) { return c0 + c1 * x.x + c2 * x.y + d * (1.0 + 0.5 * std::sin(3.0 * x.x)); }};
    const auto rep = grid::comparison_check(p, spec, dom, g1, g2);
    ++by_case[static_cast<int>(rep.hypothesis) - 1];
    s.record(rep.pass, std::max(0.0, rep.gap - rep.threshold));
  }
  notes["comparison_case_counts"] = {by_case[0], by_case[1]};
  out.push_back(s);
}

void small_domain_suite(Rng& rng, int trials, double L, std::vector<Suite>& out, nlohmann::json& notes) {
  const std::vector<grid::Shape> bases{grid::Polygon{{{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}},
                                       grid::Disk{1.0}, grid::Ellipse{1.5, 1.0}};
  Suite s{"small_domain[" + detail::tag("L", L) + "]"};
  double lo = HUGE_VAL;
  double hi = 0.0;
  for (int k = 0; k < trials; ++k) {
    PucciParams p = random_params(rng, false);
    if (k == 0) p = {1.0, 1.0, Variant::Plus, 0.0};
    const auto& base = bases[static_cast<std::size_t>(k == 0 ? 0 : pick(rng, static_cast<int>(bases.size())))];
    const auto rep = grid::small_domain_check(p, L, base);
    s.record(rep.pass, rep.pass ? 0.0 : 1.0);
    if (rep.empirical_diameter) {
      lo = std::min(lo, *rep.empirical_diameter);
      hi = std::max(hi, *rep.empirical_diameter);
    }
    if (k == 0) {
      notes["small_domain_square_laplacian"] = {
          {"predicted_diameter", json_number(rep.predicted_diameter)},
          {"empirical_diameter", rep.empirical_diameter ? json_number(*rep.empirical_diameter) : nlohmann::json()}};
    }
  }
  notes["small_domain_empirical_diameter_range"] = {json_number(lo), json_number(hi)};
  out.push_back(s);
}

}  // namespace

RunReport cmd_properties(ExperimentConfig& cfg) {
  using detail::require;
  const int trials = cfg.integer("trials", 200);
  const int comparison_trials = cfg.integer("comparison_trials", trials);
  const int small_trials = cfg.integer("small_domain_trials", trials);
  const double L = cfg.number("L", 10.0);
  const bool inject = cfg.flag("inject_nonmonotone", false);
  require(trials >= 1 && comparison_trials >= 0 && small_trials >= 0, "trial counts must be positive");
  require(L >= 0.0, "L must be non-negative");
  cfg.reject_unknown();

  RunReport rep;
  rep.command = "properties";
  rep.parameters = cfg.effective();
  // one stream per suite so that changing a trial count leaves the others alone
  Rng root(cfg.seed);
  auto stream = [&root] { return Rng(root()); };
  std::vector<Suite> suites;
  nlohmann::json notes = nlohmann::json::object();
  {
    Rng rng = stream();
    operator_suites(rng, trials, suites);
  }
  {
    Rng rng = stream();
    scheme_suites(rng, trials, inject, suites);
  }
  {
    Rng rng = stream();
    if (comparison_trials > 0) comparison_suite(rng, comparison_trials, suites, notes);
  }
  {
    Rng rng = stream();
    if (small_trials > 0) small_domain_suite(rng, small_trials, L, suites, notes);
  }

  rep.results["suites"] = nlohmann::json::array();
  for (const auto& s : suites) {
    rep.results["suites"].push_back(
        {{"name", s.name}, {"trials", s.trials}, {"failures", s.failures}, {"worst_violation", json_number(s.worst)}});
    rep.add(s.name, s.failures == 0, s.failures, 0.0);
  }
  rep.results["notes"] = notes;
  return rep;
}

}  // namespace pucci::lab
