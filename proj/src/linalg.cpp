#include "probalab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "probalab/error.hpp"

namespace probalab::linalg {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require(rows[i].size() == c, ErrorKind::ShapeMismatch, "ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Matrix Matrix::identity(std::size_t d) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorKind::ShapeMismatch, "matrix product shapes");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::ShapeMismatch, "matrix sum shapes");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::ShapeMismatch, "matrix difference shapes");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  require(a.cols() == x.size(), ErrorKind::ShapeMismatch, "matrix-vector shapes");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::ShapeMismatch, "dot product lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols(), ErrorKind::ShapeMismatch, "symmetric matrix must be square");
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = i + 1; j < m_.cols(); ++j)
      require(m_(i, j) == m_(j, i), ErrorKind::DomainError, "matrix is not symmetric");
}

double SymMatrix::quadratic(std::span<const double> u) const {
  const std::vector<double> au = m_ * u;
  return dot(u, au);
}

namespace {

double off_diagonal_mass(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenSystem eigendecompose(const SymMatrix& sym) {
  const std::size_t d = sym.dim();
  Matrix a = sym.matrix();
  Matrix v = Matrix::identity(d);  // columns converge to eigenvectors
  const double threshold = 1e-14 * frobenius(a);
  const long max_sweeps = 100L * static_cast<long>(d * d);
  int sweeps = 0;

  while (off_diagonal_mass(a) > threshold) {
    if (sweeps >= max_sweeps) fail(ErrorKind::ConvergenceFailure, "Jacobi sweeps exhausted");
    ++sweeps;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return std::abs(a(i, i)) > std::abs(a(j, j)); });
  EigenSystem out{Matrix(d, d), std::vector<double>(d), sweeps};
  for (std::size_t r = 0; r < d; ++r) {
    out.delta[r] = a(order[r], order[r]);
    for (std::size_t k = 0; k < d; ++k) out.t(r, k) = v(k, order[r]);
  }
  return out;
}

Matrix reconstruct(const EigenSystem& e) {
  return e.t.transpose() * Matrix::diagonal(e.delta) * e.t;
}

SymMatrix covariance(const Matrix& x) {
  Matrix c = cross_covariance(x, x);
  // Symmetrize exactly; the two triangles may differ in the last bit.
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = i + 1; j < c.cols(); ++j) c(j, i) = c(i, j);
  return SymMatrix(std::move(c));
}

Matrix cross_covariance(const Matrix& x, const Matrix& z) {
  require(x.rows() == z.rows() && x.rows() > 0, ErrorKind::ShapeMismatch, "paired samples needed");
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  const std::size_t q = z.cols();
  std::vector<double> mx(p, 0.0);
  std::vector<double> mz(q, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < p; ++i) mx[i] += x(r, i);
    for (std::size_t j = 0; j < q; ++j) mz[j] += z(r, j);
  }
  for (double& m : mx) m /= static_cast<double>(n);
  for (double& m : mz) m /= static_cast<double>(n);
  Matrix c(p, q);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < p; ++i) {
      const double dx = x(r, i) - mx[i];
      for (std::size_t j = 0; j < q; ++j) c(i, j) += dx * (z(r, j) - mz[j]);
    }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) c(i, j) /= static_cast<double>(n);
  return c;
}

Matrix map_rows(const Matrix& x, const Matrix& a) { return x * a.transpose(); }

double DiscreteJoint::mean(std::size_t i) const {
  double m = 0.0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) m += probs[r] * outcomes[r][i];
  return m;
}

double DiscreteJoint::covariance(std::size_t i, std::size_t j) const {
  const double mi = mean(i);
  const double mj = mean(j);
  double c = 0.0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) c += probs[r] * (outcomes[r][i] - mi) * (outcomes[r][j] - mj);
  return c;
}

double DiscreteJoint::correlation(std::size_t i, std::size_t j) const {
  const double si = std::sqrt(variance(i));
  const double sj = std::sqrt(variance(j));
  require(si > 0.0 && sj > 0.0, ErrorKind::ZeroDenominator, "correlation needs nonzero standard deviations");
  return covariance(i, j) / (si * sj);
}

double DiscreteJoint::combination_variance_direct(std::span<const double> a) const {
  return combination_covariance_direct(a, a);
}

double DiscreteJoint::combination_variance_expanded(std::span<const double> a) const {
  require(a.size() == dim(), ErrorKind::ShapeMismatch, "coefficient count");
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    v += a[i] * a[i] * variance(i);
    for (std::size_t j = i + 1; j < a.size(); ++j) v += 2.0 * a[i] * a[j] * covariance(i, j);
  }
  return v;
}

double DiscreteJoint::combination_covariance_direct(std::span<const double> a, std::span<const double> b) const {
  require(a.size() == dim() && b.size() == dim(), ErrorKind::ShapeMismatch, "coefficient count");
  std::vector<double> sa(outcomes.size());
  std::vector<double> sb(outcomes.size());
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    sa[r] = dot(a, outcomes[r]);
    sb[r] = dot(b, outcomes[r]);
    ma += probs[r] * sa[r];
    mb += probs[r] * sb[r];
  }
  double c = 0.0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) c += probs[r] * (sa[r] - ma) * (sb[r] - mb);
  return c;
}

double DiscreteJoint::combination_covariance_expanded(std::span<const double> a, std::span<const double> b) const {
  require(a.size() == dim() && b.size() == dim(), ErrorKind::ShapeMismatch, "coefficient count");
  double c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c += a[i] * b[j] * covariance(i, j);
  return c;
}

}  // namespace probalab::linalg
