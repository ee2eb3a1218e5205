#include "pucci_lab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pucci/error.hpp"
#include "pucci/radial.hpp"

namespace pucci::lab {

double bessel_j0_first_zero() {
  double lo = 2.0;
  double hi = 3.0;
  for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
    const double mid = 0.5 * (lo + hi);
    (std::cyl_bessel_j(0.0, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

HessianCrossCheck boundary_hessian_crosscheck(const PucciParams& p, double R, int points) {
  p.validate();
  if (p.variant != Variant::Plus) throw Error(ErrorCode::Unsupported, "closed form is written for M^+");
  if (R <= 0.0 || points < 1) throw Error(ErrorCode::InvalidParameters, "need R > 0 and at least one point");
  constexpr int N = 2;
  HessianCrossCheck out;
  out.points = points;

  const double m = radial::closed_form_constant(p, N, R, 0.0);
  out.pattern_confirmed =
      p.a == p.A || radial::shoot(p, N, radial::SourceSpec::constant(1.0), m, 1.5 * R, 1e-4 * R).negative_hessian_pattern();

  // phi(r) = m (1 - (r/R)^q) continues smoothly past r = R
  const double q = (2.0 + p.alpha) / (1.0 + p.alpha);
  auto u = [&](grid::Vec2 x) { return m * (1.0 - std::pow(x.norm() / R, q)); };

  const double c = radial::neumann_from_radius(p, N, R);
  const SymMatrix expected = boundary_hessian(p, c, 1.0, SymMatrix::diagonal({1.0 / R}));
  const double eta = 1e-3 * R;
  for (int k = 0; k < points; ++k) {
    const double th = 2.0 * std::numbers::pi * k / points;
    const grid::Vec2 x0{R * std::cos(th), R * std::sin(th)};
    const grid::Vec2 t{-std::sin(th), std::cos(th)};
    const grid::Vec2 n{-std::cos(th), -std::sin(th)};
    const double u0 = u(x0);
    const double utt = (u(x0 + t * eta) - 2.0 * u0 + u(x0 - t * eta)) / (eta * eta);
    const double unn = (u(x0 + n * eta) - 2.0 * u0 + u(x0 - n * eta)) / (eta * eta);
    const double utn =
        (u(x0 + (t + n) * eta) - u(x0 + (t - n) * eta) - u(x0 - (t - n) * eta) + u(x0 - (t + n) * eta)) /
        (4.0 * eta * eta);
    out.max_error = std::max({out.max_error, std::abs(utt - expected(0, 0)), std::abs(utn - expected(0, 1)),
                              std::abs(unn - expected(1, 1))});
  }
  return out;
}

double EllipseTorsion::value(grid::Vec2 x) const noexcept {
  const double a2 = ax * ax;
  const double b2 = ay * ay;
  return a2 * b2 / (2.0 * (a2 + b2)) * (1.0 - x.x * x.x / a2 - x.y * x.y / b2);
}

grid::Vec2 EllipseTorsion::gradient(grid::Vec2 x) const noexcept {
  const double a2 = ax * ax;
  const double b2 = ay * ay;
  const double k = a2 * b2 / (a2 + b2);
  return {-k * x.x / a2, -k * x.y / b2};
}

double EllipseTorsion::normal_derivative(grid::Vec2 x) const noexcept {
  const grid::Vec2 n = grid::Vec2{x.x / (ax * ax), x.y / (ay * ay)}.normalized();
  return gradient(x).dot(n);
}

std::vector<double> sweep_positions(const grid::CriticalPosition& cp, double h, int samples) {
  const double lo = cp.t_min + h;
  const double hi = cp.t_star - cp.margin;
  std::vector<double> out;
  if (samples < 1 || hi < lo) return out;
  if (samples == 1) return {hi};
  for (int k = 0; k < samples; ++k) out.push_back(lo + (hi - lo) * k / (samples - 1));
  return out;
}

}  // namespace pucci::lab
