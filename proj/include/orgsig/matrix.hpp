#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace orgsig {

/// Raised when an iterative or factorization routine fails numerically
/// (non-convergence, loss of positive definiteness, rank deficiency).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of doubles. Small fixed-size problems only
/// (n up to a few hundred); no view/expression machinery on purpose.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols, double fill = 0.0);

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  /// Extracts column j as a vector.
  std::vector<double> column(int j) const;

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

Matrix transpose(const Matrix& a);

/// (A + A') / 2. Products of symmetric matrices pick up rounding-level
/// asymmetry; callers that feed results to the eigensolver symmetrize first.
Matrix symmetrize(const Matrix& a);

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

double trace(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

/// Cholesky factor L (lower triangular, A = LL'). Throws NumericalError if a
/// pivot falls below `min_pivot`.
Matrix cholesky(const Matrix& a, double min_pivot = 1e-300);

/// Solves A X = B for symmetric positive definite A via Cholesky.
Matrix spd_solve(const Matrix& a, const Matrix& b);

/// Inverse of a symmetric positive definite matrix via Cholesky.
Matrix spd_inverse(const Matrix& a);

}  // namespace orgsig
