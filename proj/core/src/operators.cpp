#include "pucci/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pucci/error.hpp"

namespace pucci {

void PucciParams::validate() const {
  if (!(a > 0.0) || !(a <= A) || !std::isfinite(A)) {
    throw Error(ErrorCode::InvalidParameters,
                "ellipticity window must satisfy 0 < a <= A (a=" + std::to_string(a) +
                    ", A=" + std::to_string(A) + ")");
  }
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidParameters,
                "gradient exponent must satisfy alpha > -1 (alpha=" + std::to_string(alpha) + ")");
  }
}

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim), upper_(dim * (dim + 1) / 2, 0.0) {
  if (dim == 0) throw Error(ErrorCode::InvalidMatrix, "dimension must be positive");
}

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> upper) : dim_(dim), upper_(std::move(upper)) {
  if (dim == 0 || upper_.size() != dim * (dim + 1) / 2) {
    throw Error(ErrorCode::InvalidMatrix, "upper-triangle storage has the wrong length");
  }
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  SymMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw Error(ErrorCode::InvalidMatrix, "rows must be square");
    std::size_t j = 0;
    for (double v : row) {
      if (j >= i) m.set(i, j, v);
      ++j;
    }
    ++i;
  }
  return m;
}

bool SymMatrix::is_finite() const noexcept {
  return std::all_of(upper_.begin(), upper_.end(), [](double v) { return std::isfinite(v); });
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : upper_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

SymMatrix SymMatrix::operator*(double s) const {
  SymMatrix out = *this;
  for (double& v : out.upper_) v *= s;
  return out;
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  if (other.dim_ != dim_) throw Error(ErrorCode::InvalidMatrix, "dimension mismatch in sum");
  SymMatrix out = *this;
  for (std::size_t k = 0; k < upper_.size(); ++k) out.upper_[k] += other.upper_[k];
  return out;
}

SymMatrix SymMatrix::operator-() const { return *this * -1.0; }

EigenDecomp eigen_sym(const SymMatrix& X) {
  if (!X.is_finite()) throw Error(ErrorCode::InvalidMatrix, "matrix has non-finite entries");

  constexpr double kThreshold = 1e-13;
  constexpr int kMaxSweeps = 50;

  const std::size_t n = X.dim();
  std::vector<double> a(n * n);  // row-major working copy
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    v[i * n + i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = X(i, j);
  }

  const double scale = std::max(X.max_abs(), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::abs(a[i * n + j]));
    if (off <= kThreshold * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) <= kThreshold * scale * 1e-3) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return a[l * n + l] < a[r * n + r]; });

  EigenDecomp out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a[src * n + src];
    for (std::size_t row = 0; row < n; ++row) out.eigenvectors[k * n + row] = v[row * n + src];
  }
  return out;
}

double extremal_weight(Variant variant, double a, double A, double t) noexcept {
  if (variant == Variant::Plus) return t > 0.0 ? A : a;
  return t > 0.0 ? a : A;
}

double pucci_from_spectrum(const PucciParams& p, std::span<const double> eigenvalues) noexcept {
  double positive = 0.0;
  double negative = 0.0;  // sum of |negative eigenvalues|
  for (double l : eigenvalues) {
    if (l > 0.0) positive += l;
    else negative -= l;
  }
  return p.variant == Variant::Plus ? p.A * positive - p.a * negative
                                    : p.a * positive - p.A * negative;
}

double pucci(const PucciParams& p, const SymMatrix& X) {
  if (X.dim() == 1) {
    const double l = X(0, 0);
    if (!std::isfinite(l)) throw Error(ErrorCode::InvalidMatrix, "matrix has non-finite entries");
    return pucci_from_spectrum(p, std::span<const double>(&l, 1));
  }
  const EigenDecomp eig = eigen_sym(X);
  return pucci_from_spectrum(p, eig.eigenvalues);
}

double f_operator(const PucciParams& p, std::span<const double> grad, const SymMatrix& X) {
  if (grad.size() != X.dim()) throw Error(ErrorCode::InvalidParameters, "gradient and Hessian dimensions differ");
  const double norm = std::sqrt(std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0));
  const double m = pucci(p, X);
  if (p.alpha == 0.0) return m;
  if (norm == 0.0) {
    if (p.alpha < 0.0) throw Error(ErrorCode::DegenerateGradient, "|grad| = 0 with alpha < 0");
    return 0.0;
  }
  return std::pow(norm, p.alpha) * m;
}

SymMatrix boundary_hessian(const PucciParams& p, double c, double f0, const SymMatrix& curv) {
  p.validate();
  if (c == 0.0 && p.alpha < 0.0) {
    throw Error(ErrorCode::DegenerateGradient, "Neumann constant c = 0 with alpha < 0");
  }
  const std::size_t tangential = curv.dim();
  const SymMatrix tangent_block = curv * c;

  double source_term = 0.0;
  if (f0 != 0.0) {
    if (c == 0.0 && p.alpha != 0.0) throw Error(ErrorCode::DegenerateGradient, "c = 0 with f(0) != 0");
    source_term = (p.alpha == 0.0 ? 1.0 : std::pow(std::abs(c), -p.alpha)) * f0;
  }
  const double parenthesis = -pucci(p, tangent_block) - source_term;
  // Zero parenthesis gives u_NN = 0 with either weight.
  const double weight = parenthesis == 0.0 ? p.a : extremal_weight(p.variant, p.a, p.A, parenthesis);
  const double unn = parenthesis / weight;

  SymMatrix out(tangential + 1);
  for (std::size_t i = 0; i < tangential; ++i)
    for (std::size_t j = i; j < tangential; ++j) out.set(i, j, tangent_block(i, j));
  out.set(tangential, tangential, unn);
  return out;
}

}  // namespace pucci
