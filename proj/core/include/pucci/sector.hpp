#pragma once

// Spectral problem on a spherical sector S_delta of the quarter sphere
// {x1 > 0, x2 > 0} in R^N (N = 2, 3), written in the angular coordinates
//   theta_1 = atan(x2 / x1),  theta_i = atan(x_{i+1} / r_i),  r_i = |(x_1..x_i)|,
// and the barrier w = r^gamma psi(theta) built on its principal eigenfunction.
//
// For w = r^gamma psi the Hessian splits into pieces whose spectra are known
// in closed form, and superadditivity of M^- gives
//   M^-(D^2 w) >= r^(gamma-2) (H^gamma(psi) + a gamma (gamma+N-2) psi),
//   H^gamma(psi) = M^-(G D^2 psi G)
//                  + (a-A) sum_i |psi_i| (gamma q_i + q_i^2)
//                  + sum_i (i-1) min(a mu_i, A mu_i),   mu_i = -psi_i tan(theta_i) q_i^2,
// with q_i = r / r_{i+1} and G = diag(q_1, .., q_{N-1}). At a = A this is A
// times the Laplace-Beltrami operator.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pucci/operators.hpp"

namespace pucci::sector {

/// Angular measure of the quarter sphere in R^N: pi/2 (N = 2), pi (N = 3).
double quarter_sphere_measure(int N);

/// Half-width delta' of the strips removed from each face of the coordinate
/// box so that exactly `delta` of angular measure is removed.
double trimmed_margin(int N, double delta);

/// Uniform tensor grid over (d', pi/2 - d') x (-pi/2 + d', pi/2 - d')^(N-2),
/// boundary nodes included.
struct SectorMesh {
  int N = 2;
  double delta = 0.0;
  double margin = 0.0;  // delta'
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
  std::array<int, 2> intervals{1, 1};
  std::array<double, 2> step{};

  /// Throws Unsupported unless N is 2 or 3, InvalidParameters unless
  /// 0 < delta < quarter_sphere_measure(N) and spacing > 0.
  static SectorMesh build(int N, double delta, double spacing);

  int dims() const noexcept { return N - 1; }
  double spacing() const noexcept;
  std::size_t node_count() const noexcept;
  std::size_t unknown_count() const noexcept;
  std::size_t node_index(int i1, int i2) const noexcept {
    return static_cast<std::size_t>(i1) + static_cast<std::size_t>(intervals[0] + 1) * static_cast<std::size_t>(i2);
  }
  bool on_boundary(int i1, int i2) const noexcept;
  std::array<double, 2> theta(int i1, int i2) const noexcept {
    return {lo[0] + i1 * step[0], N == 3 ? lo[1] + i2 * step[1] : 0.0};
  }
};

struct SectorOperatorParams {
  double a = 1.0;
  double A = 1.0;
  double gamma = 2.0;
  double epsilon = 0.0;

  /// 0 < a <= A, gamma >= 2, epsilon >= 0.
  void validate() const;
};

/// Values on every mesh node; boundary nodes hold 0.
struct SectorField {
  std::vector<double> values;

  /// Bilinear (linear for N = 2) interpolation; OutOfDomain outside the box.
  double bilinear(const SectorMesh& mesh, std::span<const double> theta) const;
  /// Tensor Catmull-Rom interpolation, continued by odd reflection across the
  /// zero boundary; OutOfDomain outside the box.
  double cubic(const SectorMesh& mesh, std::span<const double> theta) const;
};

/// r-free coefficients at an angular point.
struct NodeCoefficients {
  std::array<double, 2> q{1.0, 1.0};           // r / r_{i+1}
  std::array<double, 2> connection{0.0, 0.0};  // (i-1) tan(theta_i) q_i^2
};

/// Throws CoefficientBlowup when theta is not inside the open coordinate box.
NodeCoefficients node_coefficients(int N, std::span<const double> theta);
/// Coefficients at every mesh node (boundary nodes included).
std::vector<NodeCoefficients> coefficients(const SectorMesh& mesh);

/// H^gamma(psi) at every interior node with centered differences; 0 on the
/// boundary.
SectorField assemble_H(const SectorOperatorParams& params, const SectorMesh& mesh, const SectorField& psi);

struct SectorEigenOptions {
  double tolerance = 1e-6;  // relative change of lambda
  int max_iterations = 500;
  int max_policy_iterations = 60;
};

struct SectorEigenResult {
  double lambda = 0.0;
  SectorField psi;  // positive inside, sup-normalized
  int iterations = 0;
  std::vector<double> history;
};

/// Inverse power iteration H(psi_{k+1}) = -psi_k, lambda = 1/|psi_{k+1}|_inf.
/// H is concave (a minimum of linear operators), so each step is a policy
/// iteration; a step ends when the policy repeats or the residual vanishes. Throws PositivityLoss and IterationLimit.
SectorEigenResult sector_principal_eigenvalue(const SectorOperatorParams& params, const SectorMesh& mesh,
                                              const SectorEigenOptions& options = {});

/// Eliminates the O(d) and O(d^2) terms from values at d, d/2, d/4.
double richardson_extrapolate(double at_d, double at_half, double at_quarter);

struct ExtrapolatedEigenvalue {
  double lambda0 = 0.0;
  std::array<double, 3> deltas{};
  std::array<double, 3> lambdas{};
};

/// Sector eigenvalue at delta, delta/2, delta/4 extrapolated to delta = 0.
ExtrapolatedEigenvalue extrapolated_eigenvalue(const SectorOperatorParams& params, int N, double delta, double spacing,
                                               const SectorEigenOptions& options = {});

struct GammaOptions {
  double spacing = 0.0;  // 0 selects pi/400
  double damping = 0.7;
  double tolerance = 1e-6;
  int max_iterations = 100;
  /// Tighter eigenvalue tolerance used inside the fixed point.
  double eigen_tolerance = 1e-10;
};

struct GammaResult {
  double gamma = 2.0;
  double lambda_bar = 0.0;
  int iterations = 0;
  std::vector<double> history;
  SectorMesh mesh;
  SectorField psi;
  /// a gamma (gamma+N-2) - lambda_bar(gamma) - epsilon at the returned gamma.
  double residual = 0.0;
};

/// Positive root of a g (g + N - 2) = value.
double exponent_root(double a, int N, double value);

/// Fixed point gamma = root(epsilon + lambda_bar(H^gamma, S_delta)), damped.
GammaResult gamma_exponent(double a, double A, double epsilon, double delta, int N, const GammaOptions& options = {});

/// Cartesian point r * sigma(theta) and its inverse.
std::array<double, 3> to_cartesian(int N, double r, std::span<const double> theta);
std::array<double, 2> to_angles(int N, std::span<const double> x);

struct BarrierValue {
  double w = 0.0;
  double grad_norm = 0.0;  // r^(gamma-1) sqrt(gamma^2 psi^2 + sum (q_i psi_i)^2)
};

BarrierValue barrier_eval(double gamma, const SectorMesh& mesh, const SectorField& psi, double r,
                          std::span<const double> theta);

struct BarrierCheck {
  int samples = 0;
  /// min over samples of (M^-(D^2 w) - epsilon w / r^2) / r^(gamma-2)
  double min_margin = 0.0;
  double tolerance = 0.0;  // 10 * mesh spacing
  bool pass = false;
};

/// Samples r in [0.5, 2] and theta in the box shrunk by three mesh steps,
/// evaluates D^2 w by centered Cartesian differences of the cubic
/// interpolant, and checks the barrier inequality up to the tolerance.
BarrierCheck barrier_inequality_check(const SectorOperatorParams& params, const SectorMesh& mesh,
                                      const SectorField& psi, int samples, std::uint64_t seed);

}  // namespace pucci::sector
