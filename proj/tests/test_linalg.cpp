#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "curvlab/errors.hpp"
#include "curvlab/linalg.hpp"

using namespace curvlab;

namespace {

Matrix random_spd(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = d(rng);
  Matrix s = a * a.transposed();
  for (int i = 0; i < n; ++i) s(i, i) += n;
  return s;
}

double max_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace

TEST(Linalg, CholeskyAndInverse) {
  std::mt19937_64 rng(1);
  for (int n = 2; n <= 6; ++n) {
    Matrix a = random_spd(rng, n);
    Matrix l = cholesky(a);
    EXPECT_LT(max_diff(l * l.transposed(), a), 1e-12);
    EXPECT_LT(max_diff(a * inverse(a), Matrix::identity(n)), 1e-12);
  }
}

TEST(Linalg, SingularMatrices) {
  Matrix z(3, 3);
  EXPECT_THROW(inverse(z), SingularMetricError);
  Matrix indef = Matrix::identity(2);
  indef(1, 1) = -1.0;
  EXPECT_THROW(cholesky(indef), SingularMetricError);
}

TEST(Linalg, JacobiEigen) {
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 6; ++n) {
    Matrix a = random_spd(rng, n);
    SymmetricEigen e = jacobi_eigen(a);
    for (int k = 1; k < n; ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        double av = 0.0;
        for (int j = 0; j < n; ++j) av += a(i, j) * e.vectors(j, k);
        EXPECT_NEAR(av, e.values[k] * e.vectors(i, k), 1e-10);
      }
    EXPECT_LT(max_diff(e.vectors.transposed() * e.vectors, Matrix::identity(n)), 1e-12);
  }
}

TEST(Linalg, JacobiDiagonalInput) {
  Matrix a(3, 3);
  a(0, 0) = 3.0;
  a(1, 1) = -1.0;
  a(2, 2) = 2.0;
  SymmetricEigen e = jacobi_eigen(a);
  EXPECT_EQ(e.values, (std::vector<double>{-1.0, 2.0, 3.0}));
}

TEST(Linalg, GeneralizedEigen) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 5; ++n) {
    Matrix a = random_spd(rng, n), b = random_spd(rng, n);
    SymmetricEigen e = generalized_eigen(a, b);
    Matrix v = e.vectors;
    EXPECT_LT(max_diff(v.transposed() * b * v, Matrix::identity(n)), 1e-10);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        double av = 0.0, bv = 0.0;
        for (int j = 0; j < n; ++j) {
          av += a(i, j) * v(j, k);
          bv += b(i, j) * v(j, k);
        }
        EXPECT_NEAR(av, e.values[k] * bv, 1e-9);
      }
  }
}
