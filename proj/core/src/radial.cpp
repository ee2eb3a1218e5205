#include "pucci/radial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pucci/error.hpp"

namespace pucci::radial {

SourceSpec SourceSpec::constant(double k) {
  SourceSpec s;
  s.kind = Kind::Constant;
  s.k = k;
  return s;
}

SourceSpec SourceSpec::eigen_power(double lambda) {
  SourceSpec s;
  s.kind = Kind::EigenPower;
  s.lambda = lambda;
  return s;
}

SourceSpec SourceSpec::power_pair(double lambda, double mu, double beta) {
  SourceSpec s;
  s.kind = Kind::PowerPair;
  s.lambda = lambda;
  s.mu = mu;
  s.beta = beta;
  return s;
}

namespace {

// |u|^e * u, continuous at 0 for e > -1.
double signed_power(double u, double e) noexcept {
  if (u == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(u), e + 1.0), u);
}

double signed_power_derivative(double u, double e) noexcept {
  if (u == 0.0) return e == 0.0 ? 1.0 : (e > 0.0 ? 0.0 : HUGE_VAL);
  return (e + 1.0) * std::pow(std::abs(u), e);
}

}  // namespace

double SourceSpec::value(double u, double alpha) const noexcept {
  switch (kind) {
    case Kind::Constant: return k;
    case Kind::EigenPower: return lambda * signed_power(u, alpha);
    case Kind::PowerPair: return lambda * signed_power(u, alpha) - mu * signed_power(u, beta - 1.0);
  }
  return 0.0;
}

double SourceSpec::derivative(double u, double alpha) const noexcept {
  switch (kind) {
    case Kind::Constant: return 0.0;
    case Kind::EigenPower: return lambda * signed_power_derivative(u, alpha);
    case Kind::PowerPair:
      return lambda * signed_power_derivative(u, alpha) - mu * signed_power_derivative(u, beta - 1.0);
  }
  return 0.0;
}

void SourceSpec::validate(double alpha) const {
  if (kind == Kind::PowerPair) {
    if (!(beta > 1.0 + alpha)) {
      throw Error(ErrorCode::InvalidParameters, "PowerPair requires beta > 1 + alpha");
    }
    if (!(mu >= 0.0)) throw Error(ErrorCode::InvalidParameters, "PowerPair requires mu >= 0");
  }
}

double RadialProfile::du_at(double r) const {
  if (radii.empty()) throw Error(ErrorCode::OutOfDomain, "empty profile");
  if (r <= radii.front()) return du.front();
  if (r >= radii.back()) return du.back();
  const auto it = std::lower_bound(radii.begin(), radii.end(), r);
  const std::size_t hi = static_cast<std::size_t>(it - radii.begin());
  if (radii[hi] == r) return du[hi];
  const std::size_t lo = hi - 1;
  const double t = (r - radii[lo]) / (radii[hi] - radii[lo]);
  return (1.0 - t) * du[lo] + t * du[hi];
}

bool RadialProfile::negative_hessian_pattern() const {
  const double limit = first_zero.value_or(radii.empty() ? 0.0 : radii.back());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] > limit) break;
    if (u[i] <= 0.0) continue;
    if (!(d2u[i] < 0.0) || !(du[i] < 0.0)) return false;
  }
  return true;
}

namespace {

void check_dimension(int N) {
  if (N < 1) throw Error(ErrorCode::InvalidParameters, "dimension N must be >= 1");
}

// K = (1+alpha) / (a((N-1)(1+alpha)+1))
double closed_form_K(const PucciParams& p, int N) {
  return (1.0 + p.alpha) / (p.a * ((N - 1) * (1.0 + p.alpha) + 1.0));
}

struct RadialOde {
  const PucciParams& p;
  int N;
  const SourceSpec& f;

  // Solves eps(u'') u'' = Q, where Q collects the source and the N-1
  // tangential eigenvalues u'/r, by trying both weights and keeping the
  // self-consistent branch.
  double second_derivative(double r, double u, double v) const {
    const double fu = f.value(u, p.alpha);
    double source = 0.0;
    if (fu != 0.0) {
      source = p.alpha == 0.0 ? fu : fu * std::pow(std::abs(v), -p.alpha);
    }
    const double tangential = v / r;
    const double q = -source - (N - 1) * extremal_weight(p.variant, p.a, p.A, tangential) * tangential;

    const double branches[2] = {q / p.a, q / p.A};
    const double weights[2] = {p.a, p.A};
    for (int b = 0; b < 2; ++b) {
      const double x = branches[b];
      if (!std::isfinite(x)) continue;
      if (x == 0.0 || extremal_weight(p.variant, p.a, p.A, x) == weights[b]) return x;
    }
    throw Error(ErrorCode::SignBranchFailure,
                "no self-consistent u'' at r=" + std::to_string(r) + " (u=" + std::to_string(u) +
                    ", u'=" + std::to_string(v) + ", Q=" + std::to_string(q) + ")",
                {r, u, v, q});
  }

  struct State {
    double u;
    double v;
  };

  State step(double r, State s, double h) const {
    const double a1 = second_derivative(r, s.u, s.v);
    const State s2{s.u + 0.5 * h * s.v, s.v + 0.5 * h * a1};
    const double a2 = second_derivative(r + 0.5 * h, s2.u, s2.v);
    const State s3{s.u + 0.5 * h * s2.v, s.v + 0.5 * h * a2};
    const double a3 = second_derivative(r + 0.5 * h, s3.u, s3.v);
    const State s4{s.u + h * s3.v, s.v + h * a3};
    const double a4 = second_derivative(r + h, s4.u, s4.v);
    return {s.u + h / 6.0 * (s.v + 2.0 * s2.v + 2.0 * s3.v + s4.v),
            s.v + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)};
  }
};

}  // namespace

double closed_form_constant(const PucciParams& p, int N, double R, double r) {
  p.validate();
  check_dimension(N);
  if (p.variant != Variant::Plus) {
    throw Error(ErrorCode::InvalidParameters, "closed form is stated for the Plus variant");
  }
  if (r < 0.0 || r > R) {
    throw Error(ErrorCode::OutOfDomain, "r=" + std::to_string(r) + " outside [0, R=" + std::to_string(R) + "]");
  }
  if (r == R) return 0.0;
  const double e = (p.alpha + 2.0) / (p.alpha + 1.0);
  const double coeff = (p.alpha + 1.0) / (p.alpha + 2.0) * std::pow(closed_form_K(p, N), 1.0 / (1.0 + p.alpha));
  return coeff * (std::pow(R, e) - std::pow(r, e));
}

double neumann_from_radius(const PucciParams& p, int N, double R) {
  p.validate();
  check_dimension(N);
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidParameters, "radius must be positive");
  return -std::pow(closed_form_K(p, N) * R, 1.0 / (1.0 + p.alpha));
}

double overdetermined_radius(const PucciParams& p, int N, double c) {
  p.validate();
  check_dimension(N);
  if (!(c < 0.0)) {
    throw Error(ErrorCode::InvalidNeumannData,
                "positive solutions need c < 0 (got c=" + std::to_string(c) + ")");
  }
  return std::pow(-c, 1.0 + p.alpha) / closed_form_K(p, N);
}

RadialProfile shoot(const PucciParams& p, int N, const SourceSpec& f, double m, double r_max, double h) {
  p.validate();
  check_dimension(N);
  f.validate(p.alpha);
  if (!(m > 0.0)) throw Error(ErrorCode::InvalidParameters, "center value m must be positive");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidParameters, "step h must be positive");

  const double r0 = 10.0 * h;
  if (!(r_max > r0)) throw Error(ErrorCode::InvalidParameters, "r_max must exceed the startup radius 10h");

  RadialProfile out;
  const double fm = f.value(m, p.alpha);
  if (fm == 0.0) {
    // u'' = u' = 0 is self-consistent forever.
    out.degenerate = true;
    out.radii = {0.0, r_max};
    out.u = {m, m};
    out.du = {0.0, 0.0};
    out.d2u = {0.0, 0.0};
    return out;
  }

  const double sgn = fm > 0.0 ? 1.0 : -1.0;
  const double k = extremal_weight(p.variant, p.a, p.A, -sgn);
  const double q = 1.0 / (1.0 + p.alpha);
  const double C =
      std::pow(std::abs(fm) * (1.0 + p.alpha) / (k * ((N - 1) * (1.0 + p.alpha) + 1.0)), q);

  RadialOde ode{p, N, f};
  RadialOde::State state{m - sgn * C * std::pow(r0, q + 1.0) / (q + 1.0), -sgn * C * std::pow(r0, q)};

  const std::size_t steps = static_cast<std::size_t>(std::ceil((r_max - r0) / h));
  out.radii.reserve(steps + 2);
  out.u.reserve(steps + 2);
  out.du.reserve(steps + 2);
  out.d2u.reserve(steps + 2);
  auto record = [&](double r, const RadialOde::State& s) {
    out.radii.push_back(r);
    out.u.push_back(s.u);
    out.du.push_back(s.v);
    out.d2u.push_back(ode.second_derivative(r, s.u, s.v));
  };

  double r = r0;
  record(r, state);
  const double m_sign = 1.0;  // m > 0
  for (std::size_t i = 0; i < steps; ++i) {
    const double step = std::min(h, r_max - r);
    if (step <= 0.0) break;
    const RadialOde::State next = ode.step(r, state, step);
    if (!std::isfinite(next.u) || !std::isfinite(next.v)) {
      throw Error(ErrorCode::SignBranchFailure, "integration produced non-finite values at r=" + std::to_string(r));
    }
    if (next.u * m_sign <= 0.0) {
      double lo = 0.0;
      double hi = step;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * (r + step); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ode.step(r, state, mid).u * m_sign > 0.0) lo = mid;
        else hi = mid;
      }
      const double s_zero = 0.5 * (lo + hi);
      const RadialOde::State at_zero = ode.step(r, state, s_zero);
      if (s_zero > 0.0) record(r + s_zero, at_zero);
      out.first_zero = r + s_zero;
      if (step > s_zero) record(r + step, next);
      return out;
    }
    r += step;
    state = next;
    record(r, state);
  }
  return out;
}

double neumann_constant(const RadialProfile& profile) {
  if (!profile.first_zero) throw Error(ErrorCode::NoZeroCrossing, "profile has no zero crossing");
  return profile.du_at(*profile.first_zero);
}

double principal_eigenvalue_ball(const PucciParams& p, int N, double R, const EigenOptions& options) {
  p.validate();
  check_dimension(N);
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidParameters, "radius must be positive");

  const double h = R * options.relative_step;
  const double reach = 1.5 * R;
  // first zero of the lambda-profile, +inf when beyond reach
  auto first_zero = [&](double lambda) {
    const RadialProfile prof = shoot(p, N, SourceSpec::eigen_power(lambda), 1.0, reach, h);
    return prof.first_zero.value_or(HUGE_VAL);
  };

  // Scout at lambda = 1 on a coarse step, then use (1+alpha)-homogeneity:
  // Z(lambda) = Z(1) lambda^(-1/(2+alpha)).
  double scout_zero = HUGE_VAL;
  for (double r_max = 4.0; r_max < 1e12 && !std::isfinite(scout_zero); r_max *= 4.0) {
    const RadialProfile prof = shoot(p, N, SourceSpec::eigen_power(1.0), 1.0, r_max, r_max * 1e-4);
    if (prof.first_zero) scout_zero = *prof.first_zero;
  }
  if (!std::isfinite(scout_zero)) throw Error(ErrorCode::BracketFailure, "scout profile never reaches zero");
  const double guess = std::pow(scout_zero / R, 2.0 + p.alpha);

  double lo = guess * 0.95;
  double hi = guess * 1.05;
  int expansions = 0;
  while (first_zero(lo) <= R) {
    lo *= 0.7;
    if (++expansions > 60) throw Error(ErrorCode::BracketFailure, "no lower bracket for lambda");
  }
  expansions = 0;
  while (first_zero(hi) > R) {
    hi *= 1.4;
    if (++expansions > 60) throw Error(ErrorCode::BracketFailure, "no upper bracket for lambda");
  }

  for (int it = 0; it < options.max_iterations && hi - lo > options.relative_tolerance * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (first_zero(mid) > R) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace pucci::radial
