#include "pucci/grid_solver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "linear_solver.hpp"
#include "pucci/error.hpp"
#include "pucci/parallel.hpp"

namespace pucci::grid {

Source Source::constant(double k) {
  return {[k](double, std::size_t) { return k; }, [](double, std::size_t) { return 0.0; }};
}

Source Source::from_spec(const radial::SourceSpec& spec, double alpha) {
  spec.validate(alpha);
  return {[spec, alpha](double u, std::size_t) { return spec.value(u, alpha); },
          [spec, alpha](double u, std::size_t) {
            const double d = spec.derivative(u, alpha);
            return std::isfinite(d) ? d : 0.0;
          }};
}

Source Source::affine(double slope, double intercept) {
  return {[slope, intercept](double u, std::size_t) { return slope * u + intercept; },
          [slope](double, std::size_t) { return slope; }};
}

Source Source::field(std::vector<double> per_cell) {
  auto data = std::make_shared<const std::vector<double>>(std::move(per_cell));
  return {[data](double, std::size_t cell) { return (*data)[cell]; }, [](double, std::size_t) { return 0.0; }};
}

BoundaryData BoundaryData::constant(double value) {
  return {[value](Vec2) { return value; }};
}

GridField boundary_field(const GridDomain& dom, const BoundaryData& g) {
  GridField u = zero_field(dom);
  for (std::size_t k = 0; k < dom.cuts.size(); ++k) u.boundary_values[k] = g.g(dom.cuts[k].point);
  return u;
}

namespace {

// Policy iteration for F(u) + f(u) = 0. The linear solver keeps its
// preconditioner while the assembled Jacobian repeats exactly, which is the
// common case inside the inverse power iteration.
class PolicyNewton {
 public:
  PolicyNewton(const PucciParams& p, const GridDomain& dom, const StencilSet& stencil)
      : p_(p), dom_(dom), pairs_(detail::resolve_pairs(stencil)) {}

  SolveResult solve(const Source& f, GridField u, int max_iterations, double tolerance) {
    const std::size_t n = dom_.cell_count();
    std::vector<detail::CellLinearization> lin(n);
    std::vector<double> rhs(n);
    SolveResult result;

    for (int it = 0; it <= max_iterations; ++it) {
      parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) lin[c] = detail::linearize_cell(p_, dom_, u, pairs_, c);
      });
      double res = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        rhs[c] = -(lin[c].value + f.value(u.at_cell(dom_, c), c));
        res = std::max(res, std::abs(rhs[c]));
      }
      if (!std::isfinite(res)) {
        throw Error(ErrorCode::IterationLimit, "residual became non-finite", std::move(result.residual_history));
      }
      result.residual_history.push_back(res);
      result.iterations = it;
      if (res <= tolerance * std::max(1.0, max_abs_interior(dom_, u))) {
        result.u = std::move(u);
        return result;
      }
      if (it == max_iterations) break;

      std::vector<Eigen::Triplet<double>> triplets;
      triplets.reserve(n * 5);
      for (std::size_t c = 0; c < n; ++c) {
        const auto row = static_cast<int>(c);
        const double g = lin[c].grad_factor;
        triplets.emplace_back(row, row, g * lin[c].diag + f.derivative(u.at_cell(dom_, c), c));
        for (const auto& nb : lin[c].neighbors) {
          if (nb.cell >= 0) triplets.emplace_back(row, nb.cell, g * nb.weight);
        }
      }
      pucci::detail::PolicyLinearSolver::Matrix jac(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      jac.setFromTriplets(triplets.begin(), triplets.end());
      const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(n));
      Eigen::VectorXd du;
      if (!linear_.solve(std::move(jac), b, du)) {
        throw Error(ErrorCode::IterationLimit, "policy Jacobian is singular", std::move(result.residual_history));
      }
      for (std::size_t c = 0; c < n; ++c) u.values[static_cast<std::size_t>(dom_.node_of_cell[c])] += du[static_cast<Eigen::Index>(c)];
    }
    throw Error(ErrorCode::IterationLimit,
                "no convergence after " + std::to_string(max_iterations) + " policy iterations",
                std::move(result.residual_history));
  }

 private:
  PucciParams p_;
  const GridDomain& dom_;
  std::vector<std::array<int, 2>> pairs_;
  pucci::detail::PolicyLinearSolver linear_;
};

}  // namespace

double residual(const PucciParams& p, const GridDomain& dom, const GridField& u, const Source& f,
                const StencilSet& stencil) {
  const GridField F = discretize_F(p, dom, u, stencil);
  double res = 0.0;
  for (std::size_t c = 0; c < dom.cell_count(); ++c) {
    res = std::max(res, std::abs(F.at_cell(dom, c) + f.value(u.at_cell(dom, c), c)));
  }
  return res;
}

SolveResult solve_dirichlet(const PucciParams& p, const GridDomain& dom, const Source& f, const BoundaryData& g,
                            const SolveOptions& options) {
  p.validate();
  if (p.alpha != 0.0 && !options.experimental_alpha) {
    throw Error(ErrorCode::Unsupported, "alpha != 0 grid solves require experimental_alpha");
  }
  PolicyNewton solver(p, dom, options.stencil);
  return solver.solve(f, boundary_field(dom, g), options.max_iterations, options.tolerance);
}

EigenResult principal_eigenvalue_grid(const PucciParams& p, const GridDomain& dom, const EigenOptions& options) {
  p.validate();
  if (p.alpha != 0.0) throw Error(ErrorCode::Unsupported, "grid eigenvalues are computed for alpha = 0 only");

  const std::size_t n = dom.cell_count();
  PolicyNewton solver(p, dom, options.stencil);
  constexpr int kInnerIterations = 100;
  constexpr double kInnerTolerance = 1e-10;

  EigenResult out;
  GridField phi = solver.solve(Source::constant(1.0), zero_field(dom), kInnerIterations, kInnerTolerance).u;
  double lambda_prev = 0.0;
  {
    const double mx = max_abs_interior(dom, phi);
    for (double& v : phi.values) v /= mx;
    lambda_prev = 1.0 / mx;
  }

  for (int k = 1; k <= options.max_iterations; ++k) {
    std::vector<double> rhs(n);
    for (std::size_t c = 0; c < n; ++c) rhs[c] = phi.at_cell(dom, c);
    GridField guess = phi;
    for (double& v : guess.values) v /= lambda_prev;
    GridField psi = solver.solve(Source::field(std::move(rhs)), std::move(guess), kInnerIterations, kInnerTolerance).u;

    double mx = -HUGE_VAL;
    double mn = HUGE_VAL;
    for (std::size_t c = 0; c < n; ++c) {
      mx = std::max(mx, psi.at_cell(dom, c));
      mn = std::min(mn, psi.at_cell(dom, c));
    }
    if (!(mx > 0.0) || mn / mx < -1e-12) {
      throw Error(ErrorCode::PositivityLoss,
                  "inverse iterate lost positivity (min/max = " + std::to_string(mn / mx) + ")", out.history);
    }
    const double lambda = 1.0 / mx;
    for (double& v : psi.values) v /= mx;
    phi = std::move(psi);
    out.history.push_back(lambda);
    out.iterations = k;
    if (std::abs(lambda - lambda_prev) <= options.tolerance * lambda) {
      out.lambda = lambda;
      out.phi = std::move(phi);
      return out;
    }
    lambda_prev = lambda;
  }
  throw Error(ErrorCode::IterationLimit, "inverse power iteration did not converge", out.history);
}

}  // namespace pucci::grid
