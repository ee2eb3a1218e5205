#pragma once

// Linear solves inside policy iterations. Every policy matrix is an M-matrix
// up to the first-order terms, so BiCGSTAB with an incomplete LU converges in
// a few dozen steps even on fine grids; a sparse LU is the fallback. The
// preconditioner is kept while the policy (hence the matrix) repeats.

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cstring>
#include <memory>

namespace pucci::detail {

class PolicyLinearSolver {
 public:
  using Matrix = Eigen::SparseMatrix<double>;

  /// Solves m x = b to relative residual 1e-13. Returns false when m is
  /// numerically singular.
  bool solve(Matrix&& m, const Eigen::VectorXd& b, Eigen::VectorXd& x) {
    m.makeCompressed();
    const bool repeat = krylov_ && same(m, matrix_);
    if (!repeat) {
      matrix_ = std::move(m);
      krylov_ = std::make_unique<Krylov>();
      krylov_->preconditioner().setDroptol(kDropTolerance);
      krylov_->preconditioner().setFillfactor(kFillFactor);
      krylov_->setTolerance(kTolerance);
      krylov_->setMaxIterations(kMaxIterations);
      krylov_->compute(matrix_);
      ++preconditioners_;
    }
    if (krylov_->info() == Eigen::Success) {
      x = krylov_->solve(b);
      if (krylov_->info() == Eigen::Success && x.allFinite()) {
        iterations_ += krylov_->iterations();
        return true;
      }
    }
    Eigen::SparseLU<Matrix, Eigen::COLAMDOrdering<Matrix::StorageIndex>> lu;
    lu.compute(matrix_);
    if (lu.info() != Eigen::Success) return false;
    ++direct_;
    x = lu.solve(b);
    return x.allFinite();
  }

  int preconditioners() const noexcept { return preconditioners_; }
  long krylov_iterations() const noexcept { return iterations_; }
  int direct_solves() const noexcept { return direct_; }

 private:
  using Krylov = Eigen::BiCGSTAB<Matrix, Eigen::IncompleteLUT<double>>;

  static constexpr double kTolerance = 1e-13;
  static constexpr int kMaxIterations = 1000;
  static constexpr double kDropTolerance = 1e-2;
  static constexpr int kFillFactor = 10;

  static bool same(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.nonZeros() != y.nonZeros()) return false;
    const auto nnz = static_cast<std::size_t>(x.nonZeros());
    const auto outer = static_cast<std::size_t>(x.outerSize()) + 1;
    return std::memcmp(x.outerIndexPtr(), y.outerIndexPtr(), outer * sizeof(Matrix::StorageIndex)) == 0 &&
           std::memcmp(x.innerIndexPtr(), y.innerIndexPtr(), nnz * sizeof(Matrix::StorageIndex)) == 0 &&
           std::memcmp(x.valuePtr(), y.valuePtr(), nnz * sizeof(double)) == 0;
  }

  Matrix matrix_;
  std::unique_ptr<Krylov> krylov_;
  int preconditioners_ = 0;
  long iterations_ = 0;
  int direct_ = 0;
};

}  // namespace pucci::detail
