#include <cmath>
#include <vector>

#include <doctest.h>

#include "oracles/bessel.hpp"
#include "pucci/error.hpp"
#include "pucci/radial.hpp"

using namespace pucci;
using radial::SourceSpec;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::Unsupported;
}

double sup_error_to_closed_form(const PucciParams& p, int N, double R, const radial::RadialProfile& prof) {
  double err = 0.0;
  for (std::size_t i = 0; i < prof.size() && prof.radii[i] <= R; ++i) {
    err = std::max(err, std::abs(prof.u[i] - radial::closed_form_constant(p, N, R, prof.radii[i])));
  }
  return err;
}

}  // namespace

TEST_CASE("closed form values") {
  const PucciParams lap{1.0, 1.0, Variant::Plus, 0.0};
  CHECK(radial::closed_form_constant(lap, 2, 1.0, 0.0) == doctest::Approx(0.25));
  CHECK(radial::closed_form_constant(lap, 2, 1.0, 0.5) == doctest::Approx((1.0 - 0.25) / 4.0));
  const PucciParams p{1.0, 1.0, Variant::Plus, 1.0};
  // (2/3) (2/5)^(1/2): K = (1+alpha) / (a((N-1)(1+alpha)+1)) = 2/5 for N = 3
  CHECK(radial::closed_form_constant(p, 3, 1.0, 0.0) == doctest::Approx(2.0 / 3.0 * std::sqrt(0.4)).epsilon(1e-14));
  for (double al : {-0.5, 0.0, 1.0, 2.5}) {
    CHECK(radial::closed_form_constant({0.7, 1.2, Variant::Plus, al}, 3, 1.3, 1.3) == 0.0);
  }
}

TEST_CASE("closed form domain errors") {
  const PucciParams lap{1.0, 1.0, Variant::Plus, 0.0};
  CHECK(code_of([&] { radial::closed_form_constant(lap, 2, 1.0, 1.1); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { radial::closed_form_constant(lap, 2, 1.0, -0.1); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([] { radial::closed_form_constant({1.0, 1.0, Variant::Minus, 0.0}, 2, 1.0, 0.0); }) ==
        ErrorCode::InvalidParameters);
}

TEST_CASE("overdetermined radius") {
  CHECK(radial::overdetermined_radius({1.0, 1.0, Variant::Plus, 0.0}, 2, -0.5) == doctest::Approx(1.0));
  // |c|^2 / K with K = 2/5
  const PucciParams p{1.0, 2.0, Variant::Plus, 1.0};
  CHECK(radial::overdetermined_radius(p, 3, -0.4) == doctest::Approx(0.4));
  for (double c : {-0.01, -0.3, -1.0, -4.0}) {
    for (double al : {-0.5, 0.0, 1.0}) {
      const PucciParams q{0.8, 1.0, Variant::Plus, al};
      for (int N : {2, 3, 5}) {
        CHECK(radial::neumann_from_radius(q, N, radial::overdetermined_radius(q, N, c)) ==
              doctest::Approx(c).epsilon(1e-12));
      }
    }
  }
  CHECK(code_of([] { radial::overdetermined_radius({1.0, 1.0, Variant::Plus, 0.0}, 2, 0.0); }) ==
        ErrorCode::InvalidNeumannData);
  CHECK(code_of([] { radial::overdetermined_radius({1.0, 1.0, Variant::Plus, 0.0}, 2, 0.3); }) ==
        ErrorCode::InvalidNeumannData);
}

TEST_CASE("overdetermined radius agrees with a shooting solve") {
  const PucciParams p{1.0, 2.0, Variant::Plus, 1.0};
  const double R = radial::overdetermined_radius(p, 3, -0.4);
  const auto prof = radial::shoot(p, 3, SourceSpec::constant(1.0), radial::closed_form_constant(p, 3, R, 0.0), 1.0, 1e-5);
  REQUIRE(prof.first_zero);
  CHECK(*prof.first_zero == doctest::Approx(R).epsilon(1e-6));
  CHECK(radial::neumann_constant(prof) == doctest::Approx(-0.4).epsilon(1e-6));
}

TEST_CASE("shoot reproduces the Laplacian torsion profile") {
  const auto prof = radial::shoot({1.0, 1.0, Variant::Plus, 0.0}, 2, SourceSpec::constant(1.0), 0.25, 1.5, 1e-4);
  REQUIRE(prof.first_zero);
  CHECK(std::abs(*prof.first_zero - 1.0) <= 1e-6);
  CHECK(std::abs(radial::neumann_constant(prof) + 0.5) <= 1e-6);
}

TEST_CASE("shoot matches the closed form across parameters") {
  for (double al : {-0.5, 0.0, 1.0}) {
    for (int N : {2, 3}) {
      const PucciParams p{1.0, 1.0, Variant::Plus, al};
      const auto prof =
          radial::shoot(p, N, SourceSpec::constant(1.0), radial::closed_form_constant(p, N, 1.0, 0.0), 1.5, 1e-4);
      CHECK(sup_error_to_closed_form(p, N, 1.0, prof) <= 1e-5);
    }
  }
  // a < A: the closed form (coefficient a) holds while both Hessian eigenvalues are negative
  const PucciParams q{1.0, 2.0, Variant::Plus, 1.0};
  const auto prof =
      radial::shoot(q, 3, SourceSpec::constant(1.0), radial::closed_form_constant(q, 3, 1.0, 0.0), 1.5, 1e-4);
  CHECK(prof.negative_hessian_pattern());
  CHECK(sup_error_to_closed_form(q, 3, 1.0, prof) <= 1e-5);
}

TEST_CASE("shoot scaling under the homogeneity of the operator") {
  for (double al : {-0.5, 0.0, 1.0}) {
    const PucciParams p{1.0, 1.5, Variant::Plus, al};
    const double lam = 3.0;
    const auto base = radial::shoot(p, 2, SourceSpec::eigen_power(lam), 1.0, 3.0, 1e-4);
    REQUIRE(base.first_zero);
    for (double s : {0.5, 2.0}) {
      const auto scaled = radial::shoot(p, 2, SourceSpec::eigen_power(lam * std::pow(s, -(2.0 + al))), 1.0, 3.0 * s, 1e-4 * s);
      REQUIRE(scaled.first_zero);
      CHECK(*scaled.first_zero == doctest::Approx(s * *base.first_zero).epsilon(1e-8));
    }
  }
}

TEST_CASE("first zero decreases strictly in lambda") {
  for (auto v : {Variant::Plus, Variant::Minus}) {
    const PucciParams p{0.7, 1.4, v, 0.0};
    double prev = HUGE_VAL;
    for (double lam = 2.0; lam <= 40.0; lam *= 1.3) {
      const auto prof = radial::shoot(p, 2, SourceSpec::eigen_power(lam), 1.0, 5.0, 1e-3);
      REQUIRE(prof.first_zero);
      CHECK(*prof.first_zero < prev);
      prev = *prof.first_zero;
    }
  }
}

TEST_CASE("neumann constant signs and errors") {
  const auto eig = radial::shoot({1.0, 2.0, Variant::Minus, 0.0}, 3, SourceSpec::eigen_power(10.0), 1.0, 3.0, 1e-3);
  CHECK(radial::neumann_constant(eig) < 0.0);
  const auto flat = radial::shoot({1.0, 1.0, Variant::Plus, 0.0}, 2, SourceSpec::constant(0.0), 0.3, 1.0, 1e-2);
  CHECK(flat.degenerate);
  CHECK_FALSE(flat.first_zero);
  for (double u : flat.u) CHECK(u == 0.3);
  CHECK(code_of([&] { radial::neumann_constant(flat); }) == ErrorCode::NoZeroCrossing);
  const auto short_run = radial::shoot({1.0, 1.0, Variant::Plus, 0.0}, 2, SourceSpec::constant(1.0), 0.25, 0.5, 1e-3);
  CHECK_FALSE(short_run.first_zero);
}

TEST_CASE("ball eigenvalue against the Bessel zero") {
  const double j0 = oracle::bessel_j0_zero();
  CHECK(j0 == doctest::Approx(2.404825557695773).epsilon(1e-14));
  const double lam = radial::principal_eigenvalue_ball({1.0, 1.0, Variant::Plus, 0.0}, 2, 1.0);
  CHECK(std::abs(lam - j0 * j0) <= 1e-6 * j0 * j0);
  const double lam3 = radial::principal_eigenvalue_ball({2.0, 2.0, Variant::Minus, 0.0}, 2, 1.0);
  CHECK(std::abs(lam3 - 2.0 * j0 * j0) <= 2e-6 * j0 * j0);
}

TEST_CASE("ball eigenvalue scaling in R") {
  for (double al : {-0.5, 0.0, 1.0}) {
    const PucciParams p{1.0, 2.0, Variant::Plus, al};
    const double l1 = radial::principal_eigenvalue_ball(p, 2, 1.0);
    const double l2 = radial::principal_eigenvalue_ball(p, 2, 2.0);
    const double l3 = radial::principal_eigenvalue_ball(p, 3, 0.7);
    const double l4 = radial::principal_eigenvalue_ball(p, 3, 1.9);
    CHECK(l2 == doctest::Approx(l1 * std::pow(2.0, -(2.0 + al))).epsilon(1e-7));
    CHECK(l3 * std::pow(0.7, 2.0 + al) == doctest::Approx(l4 * std::pow(1.9, 2.0 + al)).epsilon(1e-7));
  }
}

TEST_CASE("ball eigenvalue regression anchors") {
  const double j2 = std::pow(oracle::bessel_j0_zero(), 2);
  const double plus = radial::principal_eigenvalue_ball({1.0, 2.0, Variant::Plus, 0.0}, 2, 1.0);
  CHECK(plus > j2 / 2.0);
  CHECK(plus < 2.0 * j2);
  CHECK(plus == doctest::Approx(5.73311491).epsilon(1e-7));
  CHECK(radial::principal_eigenvalue_ball({1.0, 2.0, Variant::Minus, 0.0}, 2, 1.0) ==
        doctest::Approx(11.77880380).epsilon(1e-7));
  CHECK(radial::principal_eigenvalue_ball({1.0, 1.0, Variant::Plus, 1.0}, 2, 1.0) ==
        doctest::Approx(9.60051847).epsilon(1e-7));
}

TEST_CASE("ball eigenvalue is monotone in the upper ellipticity") {
  // M+ grows with A, so positive supersolutions for a larger A are
  // supersolutions for a smaller one: lambda(M+) is nonincreasing in A and
  // lambda(M-) nondecreasing.
  double prev_plus = HUGE_VAL;
  double prev_minus = 0.0;
  for (double A : {1.0, 1.5, 2.0}) {
    const double lp = radial::principal_eigenvalue_ball({1.0, A, Variant::Plus, 0.0}, 2, 1.0);
    const double lm = radial::principal_eigenvalue_ball({1.0, A, Variant::Minus, 0.0}, 2, 1.0);
    CHECK(lp <= prev_plus);
    CHECK(lm >= prev_minus);
    prev_plus = lp;
    prev_minus = lm;
  }
}
