#pragma once

// Pucci extremal operators on small dense symmetric matrices, the degenerate
// operator |p|^alpha M(X), and the boundary Hessian of an overdetermined
// solution.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pucci {

enum class Variant { Plus, Minus };

/// Operator parameters: ellipticity window [a, A], extremal variant and
/// gradient exponent alpha of |p|^alpha.
struct PucciParams {
  double a = 1.0;
  double A = 1.0;
  Variant variant = Variant::Plus;
  double alpha = 0.0;

  /// Throws InvalidParameters unless 0 < a <= A and alpha > -1.
  void validate() const;
};

/// Dense symmetric matrix storing the upper triangle row by row.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dim);
  SymMatrix(std::size_t dim, std::vector<double> upper);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(std::span<const double> diag);
  static SymMatrix diagonal(std::initializer_list<double> diag);
  /// Builds from full rows; only the upper triangle is read.
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return upper_[offset(i, j)]; }
  void set(std::size_t i, std::size_t j, double value) noexcept { upper_[offset(i, j)] = value; }
  std::span<const double> upper() const noexcept { return upper_; }

  bool is_finite() const noexcept;
  double max_abs() const noexcept;
  double trace() const noexcept;

  SymMatrix operator*(double s) const;
  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix operator-() const;

 private:
  std::size_t offset(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * dim_ - i * (i + 1) / 2 + j;
  }

  std::size_t dim_;
  std::vector<double> upper_;
};

/// Spectrum with ascending eigenvalues; eigenvectors are stored column-major,
/// column k belonging to eigenvalues[k].
struct EigenDecomp {
  std::vector<double> eigenvalues;
  std::vector<double> eigenvectors;

  std::size_t dim() const noexcept { return eigenvalues.size(); }
  double vector(std::size_t k, std::size_t row) const noexcept {
    return eigenvectors[k * dim() + row];
  }
};

/// Cyclic Jacobi eigensolver. Throws InvalidMatrix on non-finite input.
EigenDecomp eigen_sym(const SymMatrix& X);

/// Coefficient applied to a Hessian eigenvalue t by the extremal operator:
/// A for positive t and a otherwise under Plus, mirrored under Minus.
double extremal_weight(Variant variant, double a, double A, double t) noexcept;

/// M^+(X) = A tr(X+) - a tr(X-) or M^-(X) = a tr(X+) - A tr(X-), where tr(X-)
/// sums the absolute values of the negative eigenvalues.
double pucci(const PucciParams& p, const SymMatrix& X);
double pucci_from_spectrum(const PucciParams& p, std::span<const double> eigenvalues) noexcept;

/// |grad|^alpha * pucci(p, X). Throws DegenerateGradient when alpha < 0 and
/// grad vanishes.
double f_operator(const PucciParams& p, std::span<const double> grad, const SymMatrix& X);

/// Hessian of a solution of |Du|^alpha M(D^2u) + f(u) = 0, u = 0 and
/// du/dn = c (outer normal) at a boundary point, in the frame whose first
/// N-1 axes are tangent and whose last axis is the inner normal. `curv` is
/// the Hessian of the boundary written as a graph over the tangent plane
/// along the inner normal (positive for convex domains) and f0 = f(0).
///
/// The result is diag(c * curv, u_NN), where u_NN solves
///   |c|^alpha (M(c * curv) + w * u_NN) + f0 = 0
/// with w the extremal weight of the sign of u_NN, i.e.
///   u_NN = beta * (-M(c * curv) - |c|^-alpha f0),
///   beta = 1/extremal_weight(sign of the parenthesis).
SymMatrix boundary_hessian(const PucciParams& p, double c, double f0, const SymMatrix& curv);

}  // namespace pucci
