#pragma once

// Radial reduction of |u'|^alpha M(D^2u) + f(u) = 0 on balls of R^N. For
// radial u the Hessian has eigenvalue u'' once and u'/r with multiplicity
// N - 1, so the PDE becomes a scalar ODE integrated outward from the center.

#include <optional>
#include <vector>

#include "pucci/operators.hpp"

namespace pucci::radial {

/// Source term f(u).
///   Constant:   f(u) = k
///   EigenPower: f(u) = lambda |u|^alpha u
///   PowerPair:  f(u) = lambda |u|^alpha u - mu |u|^(beta-1) u
struct SourceSpec {
  enum class Kind { Constant, EigenPower, PowerPair };

  Kind kind = Kind::Constant;
  double k = 1.0;
  double lambda = 0.0;
  double mu = 0.0;
  double beta = 2.0;

  static SourceSpec constant(double k);
  static SourceSpec eigen_power(double lambda);
  static SourceSpec power_pair(double lambda, double mu, double beta);

  double value(double u, double alpha) const noexcept;
  double derivative(double u, double alpha) const noexcept;

  /// PowerPair requires beta > 1 + alpha and mu >= 0.
  void validate(double alpha) const;
};

/// Radial samples u(r), u'(r), u''(r) on ascending radii. When `first_zero`
/// is set, a sample sits exactly at it and u changes sign across it.
struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> u;
  std::vector<double> du;
  std::vector<double> d2u;
  std::optional<double> first_zero;
  /// f(m) = 0: the profile is the constant m.
  bool degenerate = false;

  std::size_t size() const noexcept { return radii.size(); }
  /// Linear interpolation of u' at r (clamped to the sampled range).
  double du_at(double r) const;
  /// True when u'' < 0 and u' < 0 at every sample with 0 < r <= first_zero,
  /// i.e. both Hessian eigenvalues are negative along the positive part.
  bool negative_hessian_pattern() const;
};

/// Closed form for f = 1 and M^+ (coefficient a):
///   phi(r) = (1+alpha)/(2+alpha) * K^(1/(1+alpha)) * (R^p - r^p),
///   K = (1+alpha) / (a((N-1)(1+alpha)+1)),  p = (2+alpha)/(1+alpha).
/// Throws OutOfDomain for r outside [0, R] and InvalidParameters for Minus.
double closed_form_constant(const PucciParams& p, int N, double R, double r);

/// Neumann constant of the closed form: c = -(K R)^(1/(1+alpha)).
double neumann_from_radius(const PucciParams& p, int N, double R);

/// Inverse of neumann_from_radius: R_c = |c|^(1+alpha) / K. Requires c < 0.
double overdetermined_radius(const PucciParams& p, int N, double c);

/// Integrates the radial ODE from u(0) = m, u'(0) = 0 with a fixed-step
/// fourth-order Runge-Kutta scheme of step h, starting at r0 = 10h from the
/// local power-law model. Stops one step after the first zero of u (located
/// by bisection within the crossing step) or at r_max.
RadialProfile shoot(const PucciParams& p, int N, const SourceSpec& f, double m, double r_max, double h);

/// u'(first_zero); throws NoZeroCrossing when the profile has no zero.
double neumann_constant(const RadialProfile& profile);

struct EigenOptions {
  /// Integration step as a fraction of R.
  double relative_step = 5e-5;
  double relative_tolerance = 1e-8;
  int max_iterations = 200;
};

/// Principal eigenvalue lambda of the ball B_R for f(u) = lambda |u|^alpha u:
/// the lambda whose shooting profile from m = 1 vanishes first at R, found by
/// bisection (first_zero is strictly decreasing in lambda).
double principal_eigenvalue_ball(const PucciParams& p, int N, double R, const EigenOptions& options = {});

}  // namespace pucci::radial
