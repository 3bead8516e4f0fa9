#pragma once

// Small dense real matrices (n <= 6 in practice).

#include <cstddef>
#include <vector>

namespace curvlab {

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Matrix transposed() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Lower-triangular L with a = L L^T. Throws SingularMetricError unless a is
// symmetric positive definite (every pivot above `min_pivot`).
Matrix cholesky(const Matrix& a, double min_pivot = 1e-10);

// Gauss-Jordan with partial pivoting. Throws SingularMetricError.
Matrix inverse(const Matrix& a);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k belongs to values[k]
};

// Cyclic Jacobi rotations; iterates until the off-diagonal Frobenius norm is
// below tol times the matrix norm.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-12);

// Solves a v = lambda b v for symmetric a and positive definite b. The
// returned eigenvectors are b-orthonormal.
SymmetricEigen generalized_eigen(const Matrix& a, const Matrix& b, double tol = 1e-12);

}  // namespace curvlab
