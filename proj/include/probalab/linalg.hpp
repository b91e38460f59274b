#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace probalab::linalg {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// From nested rows; all rows must have the same length (ShapeMismatch).
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t d);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<double>& data() const { return data_; }

  Matrix transpose() const;
  std::vector<std::vector<double>> to_rows() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

double max_abs(const Matrix& a);
double frobenius(const Matrix& a);
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Square matrix with a_ij == a_ji exactly; checked at construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows) { return SymMatrix(Matrix::from_rows(rows)); }
  static SymMatrix identity(std::size_t d) { return SymMatrix(Matrix::identity(d)); }

  std::size_t dim() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }
  /// u^t A u
  double quadratic(std::span<const double> u) const;

 private:
  Matrix m_;
};

/// Rows of t are unit eigenvectors: t A t^t = diag(delta).
struct EigenSystem {
  Matrix t;
  std::vector<double> delta;
  int sweeps = 0;
};

/// Cyclic Jacobi. Eigenvalues sorted by decreasing |delta|, ties kept in
/// original index order. Throws ConvergenceFailure after 100 d^2 sweeps.
EigenSystem eigendecompose(const SymMatrix& a);

/// t^t diag(delta) t
Matrix reconstruct(const EigenSystem& e);

// ---------------------------------------------------------------------------
// covariance algebra

/// Empirical covariance (divisor n) of the rows of x (n x d).
SymMatrix covariance(const Matrix& x);
/// Empirical cross covariance of paired rows of x (n x p) and z (n x q).
Matrix cross_covariance(const Matrix& x, const Matrix& z);
/// Rows of x mapped by v -> a v (or a v + b).
Matrix map_rows(const Matrix& x, const Matrix& a);

/// A random vector with finitely many outcomes: outcomes[r] occurs with
/// probability probs[r].
struct DiscreteJoint {
  std::vector<std::vector<double>> outcomes;
  std::vector<double> probs;

  std::size_t dim() const { return outcomes.empty() ? 0 : outcomes.front().size(); }
  double mean(std::size_t i) const;
  double covariance(std::size_t i, std::size_t j) const;
  double variance(std::size_t i) const { return covariance(i, i); }
  double correlation(std::size_t i, std::size_t j) const;

  /// Var(sum a_i X_i) from the law of the combination itself.
  double combination_variance_direct(std::span<const double> a) const;
  /// sum a_i^2 Var X_i + 2 sum_{i<j} a_i a_j Cov(X_i, X_j).
  double combination_variance_expanded(std::span<const double> a) const;
  /// Cov(sum a_i X_i, sum b_j X_j) directly and by bilinear expansion.
  double combination_covariance_direct(std::span<const double> a, std::span<const double> b) const;
  double combination_covariance_expanded(std::span<const double> a, std::span<const double> b) const;
};

}  // namespace probalab::linalg
