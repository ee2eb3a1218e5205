#include <cmath>
#include <numbers>

#include <doctest.h>

#include "pucci/error.hpp"
#include "pucci/sector.hpp"

using namespace pucci;
using namespace pucci::sector;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::Unsupported;
}

SectorField sample(const SectorMesh& mesh, auto&& g) {
  SectorField f;
  f.values.assign(mesh.node_count(), 0.0);
  const int n2 = mesh.N == 3 ? mesh.intervals[1] : 0;
  for (int i2 = 0; i2 <= n2; ++i2) {
    for (int i1 = 0; i1 <= mesh.intervals[0]; ++i1) f.values[mesh.node_index(i1, i2)] = g(mesh.theta(i1, i2));
  }
  return f;
}

double max_rel_error(const SectorMesh& mesh, const SectorField& got, const SectorField& psi, double factor) {
  double err = 0.0;
  const int n2 = mesh.N == 3 ? mesh.intervals[1] : 0;
  for (int i2 = 0; i2 <= n2; ++i2) {
    for (int i1 = 0; i1 <= mesh.intervals[0]; ++i1) {
      if (mesh.on_boundary(i1, i2)) continue;
      const auto n = mesh.node_index(i1, i2);
      err = std::max(err, std::abs(got.values[n] - factor * psi.values[n]));
    }
  }
  return err / std::abs(factor);
}

}  // namespace

TEST_CASE("sector measures and margins") {
  CHECK(quarter_sphere_measure(2) == doctest::Approx(kPi / 2.0));
  CHECK(quarter_sphere_measure(3) == doctest::Approx(kPi));
  CHECK(trimmed_margin(2, 0.2) == doctest::Approx(0.1));
  for (double d : {1e-3, 0.02, 0.2, 1.0}) {
    const double x = trimmed_margin(3, d);
    // area of the trimmed box with the cos(theta_2) area element
    const double kept = (kPi / 2.0 - 2.0 * x) * 2.0 * std::cos(x);
    CHECK(kPi - kept == doctest::Approx(d).epsilon(1e-10));
  }
  CHECK(code_of([] { trimmed_margin(2, 0.0); }) == ErrorCode::InvalidParameters);
  CHECK(code_of([] { trimmed_margin(2, 2.0); }) == ErrorCode::InvalidParameters);
  CHECK(code_of([] { SectorMesh::build(4, 0.1, 0.05); }) == ErrorCode::Unsupported);
  CHECK(code_of([] { SectorMesh::build(2, 0.1, 0.0); }) == ErrorCode::InvalidParameters);
}

TEST_CASE("mesh layout") {
  const auto m = SectorMesh::build(3, 0.1, 0.05);
  CHECK(m.lo[0] == doctest::Approx(m.margin));
  CHECK(m.hi[1] == doctest::Approx(kPi / 2.0 - m.margin));
  CHECK(m.step[0] <= 0.05);
  CHECK(m.node_count() == static_cast<std::size_t>((m.intervals[0] + 1) * (m.intervals[1] + 1)));
  CHECK(m.unknown_count() == static_cast<std::size_t>((m.intervals[0] - 1) * (m.intervals[1] - 1)));
  CHECK(m.on_boundary(0, 3));
  CHECK_FALSE(m.on_boundary(1, 1));
}

TEST_CASE("node coefficients") {
  const double t2[] = {0.3, 0.0};
  const auto c2 = node_coefficients(2, t2);
  CHECK(c2.q[0] == 1.0);
  CHECK(c2.connection[0] == 0.0);
  const double t3[] = {0.4, 0.6};
  const auto c3 = node_coefficients(3, t3);
  CHECK(c3.q[0] == doctest::Approx(1.0 / std::cos(0.6)));
  CHECK(c3.q[1] == 1.0);
  CHECK(c3.connection[1] == doctest::Approx(std::tan(0.6)));
  const double edge[] = {0.4, kPi / 2.0};
  CHECK(code_of([&] { node_coefficients(3, edge); }) == ErrorCode::CoefficientBlowup);
  const double zero[] = {0.0, 0.0};
  CHECK(code_of([&] { node_coefficients(2, zero); }) == ErrorCode::CoefficientBlowup);
}

TEST_CASE("angular coordinates round trip") {
  for (double t1 : {0.1, 0.7, 1.4}) {
    for (double t2 : {-1.2, 0.0, 0.9}) {
      const double th[] = {t1, t2};
      const auto x = to_cartesian(3, 2.0, th);
      CHECK(std::hypot(x[0], x[1], x[2]) == doctest::Approx(2.0));
      const auto back = to_angles(3, x);
      CHECK(back[0] == doctest::Approx(t1));
      CHECK(back[1] == doctest::Approx(t2));
    }
  }
}

TEST_CASE("H at a = A is the Laplace-Beltrami operator") {
  const SectorOperatorParams lap{1.0, 1.0, 2.0, 0.0};
  {
    const auto m = SectorMesh::build(2, 0.05, kPi / 800.0);
    const auto psi = sample(m, [](auto th) { return std::sin(2.0 * th[0]); });
    CHECK(max_rel_error(m, assemble_H(lap, m, psi), psi, -4.0) <= 1e-4);
  }
  {
    // 2 x1 x2 / r^2 is a degree-2 harmonic
    const auto m = SectorMesh::build(3, 0.05, kPi / 200.0);
    const auto psi = sample(m, [](auto th) { return std::pow(std::cos(th[1]), 2) * std::sin(2.0 * th[0]); });
    CHECK(max_rel_error(m, assemble_H(lap, m, psi), psi, -6.0) <= 1e-3);
  }
  const SectorOperatorParams scaled{2.5, 2.5, 3.0, 0.0};
  const auto m = SectorMesh::build(2, 0.05, kPi / 800.0);
  const auto psi = sample(m, [](auto th) { return std::sin(2.0 * th[0]); });
  CHECK(max_rel_error(m, assemble_H(scaled, m, psi), psi, -10.0) <= 1e-4);
}

TEST_CASE("H is concave and positively homogeneous") {
  const auto m = SectorMesh::build(3, 0.1, kPi / 40.0);
  const SectorOperatorParams p{0.7, 1.3, 2.2, 0.0};
  const auto u = sample(m, [](auto th) { return std::sin(3.0 * th[0]) * std::cos(th[1]); });
  const auto v = sample(m, [](auto th) { return std::cos(2.0 * th[0] + th[1]); });
  auto sum = u;
  auto twice = u;
  for (std::size_t i = 0; i < sum.values.size(); ++i) {
    sum.values[i] += v.values[i];
    twice.values[i] *= 2.0;
  }
  const auto Hu = assemble_H(p, m, u);
  const auto Hv = assemble_H(p, m, v);
  const auto Hs = assemble_H(p, m, sum);
  const auto H2 = assemble_H(p, m, twice);
  for (std::size_t i = 0; i < Hu.values.size(); ++i) {
    CHECK(Hs.values[i] >= Hu.values[i] + Hv.values[i] - 1e-9);
    CHECK(H2.values[i] == doctest::Approx(2.0 * Hu.values[i]).epsilon(1e-12));
  }
}

TEST_CASE("sector eigenvalue") {
  const double spacing = kPi / 100.0;
  SUBCASE("a = A against 4 / (1 - 2 delta / pi)^2") {
    const SectorOperatorParams lap{1.0, 1.0, 2.0, 0.0};
    for (double d : {0.2, 0.1}) {
      const auto res = sector_principal_eigenvalue(lap, SectorMesh::build(2, d, spacing));
      const double exact = std::pow(kPi / (kPi / 2.0 - d), 2);
      CHECK(res.lambda == doctest::Approx(exact).epsilon(2e-3));
    }
  }
  SUBCASE("increasing in delta and homogeneous in (a, A)") {
    const SectorOperatorParams p{0.8, 1.0, 2.0, 0.0};
    double prev = 0.0;
    for (double d : {0.05, 0.1, 0.2, 0.4}) {
      const double lam = sector_principal_eigenvalue(p, SectorMesh::build(2, d, spacing)).lambda;
      CHECK(lam > prev);
      prev = lam;
    }
    const auto mesh = SectorMesh::build(2, 0.2, spacing);
    const double base = sector_principal_eigenvalue(p, mesh).lambda;
    const double big = sector_principal_eigenvalue({2.4, 3.0, 2.0, 0.0}, mesh).lambda;
    CHECK(big == doctest::Approx(3.0 * base).epsilon(1e-5));
  }
  SUBCASE("positive sup-normalized eigenfunction") {
    const auto mesh = SectorMesh::build(3, 0.3, kPi / 30.0);
    const auto res = sector_principal_eigenvalue({0.9, 1.0, 2.1, 0.0}, mesh);
    double mx = 0.0;
    for (int i2 = 0; i2 <= mesh.intervals[1]; ++i2) {
      for (int i1 = 0; i1 <= mesh.intervals[0]; ++i1) {
        const double v = res.psi.values[mesh.node_index(i1, i2)];
        if (mesh.on_boundary(i1, i2)) {
          CHECK(v == 0.0);
        } else {
          CHECK(v > 0.0);
        }
        mx = std::max(mx, v);
      }
    }
    CHECK(mx == doctest::Approx(1.0));
  }
}

TEST_CASE("richardson extrapolation removes linear and quadratic terms") {
  const auto f = [](double d) { return 4.0 + 3.0 * d - 7.0 * d * d; };
  CHECK(richardson_extrapolate(f(0.2), f(0.1), f(0.05)) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("exponent root") {
  for (int N : {2, 3}) {
    for (double v : {0.5, 4.0, 9.3}) {
      const double g = exponent_root(0.7, N, v);
      CHECK(g > 0.0);
      CHECK(0.7 * g * (g + N - 2) == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("gamma fixed point and barrier") {
  GammaOptions opt;
  opt.spacing = kPi / 200.0;
  const auto g = gamma_exponent(0.9, 1.0, 0.1, 0.2, 2, opt);
  CHECK(g.gamma > 2.0);
  CHECK(std::abs(g.residual) <= 1e-5);
  CHECK(0.9 * g.gamma * g.gamma == doctest::Approx(g.lambda_bar + 0.1).epsilon(1e-5));
  const auto check = barrier_inequality_check({0.9, 1.0, g.gamma, 0.1}, g.mesh, g.psi, 50, 1);
  CHECK(check.samples == 50);
  CHECK(check.pass);
  CHECK(check.min_margin >= -check.tolerance);
  CHECK(code_of([] { gamma_exponent(0.9, 1.0, 0.1, 0.2, 4); }) == ErrorCode::Unsupported);
  CHECK(code_of([] { gamma_exponent(1.2, 1.0, 0.1, 0.2, 2); }) == ErrorCode::InvalidParameters);
}

TEST_CASE("barrier evaluation") {
  const auto mesh = SectorMesh::build(2, 0.2, kPi / 100.0);
  const auto psi = sample(mesh, [&](auto th) { return std::sin(kPi * (th[0] - mesh.lo[0]) / (mesh.hi[0] - mesh.lo[0])); });
  const double th[] = {kPi / 4.0, 0.0};
  const auto b = barrier_eval(2.5, mesh, psi, 2.0, th);
  CHECK(b.w == doctest::Approx(std::pow(2.0, 2.5)).epsilon(1e-6));
  CHECK(b.grad_norm == doctest::Approx(2.5 * std::pow(2.0, 1.5)).epsilon(1e-3));
  const double out[] = {0.05, 0.0};
  CHECK(code_of([&] { psi.cubic(mesh, out); }) == ErrorCode::OutOfDomain);
}
