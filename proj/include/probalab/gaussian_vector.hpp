#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "probalab/kernels.hpp"
#include "probalab/linalg.hpp"

namespace probalab::gauss {

using linalg::EigenSystem;
using linalg::Matrix;
using linalg::SymMatrix;

/// N_d(m, Sigma). The eigen cache is filled at construction and the object
/// is immutable afterwards. Eigenvalues in [-1e-12, 0) are clamped to 0;
/// anything more negative is rejected as NotPositiveSemidefinite.
class GaussianVector {
 public:
  GaussianVector(std::vector<double> mean, SymMatrix cov);
  static GaussianVector standard(std::size_t d);

  std::size_t dim() const { return mean_.size(); }
  const std::vector<double>& mean() const { return mean_; }
  const SymMatrix& cov() const { return cov_; }
  const EigenSystem& eigen() const { return eigen_; }
  /// delta_j after clamping.
  const std::vector<double>& variances() const { return delta_; }
  /// True when every delta_j exceeds 1e-12 (pdf and quadratic forms allowed).
  bool invertible() const { return invertible_; }
  double determinant() const;

  /// exp(<m, u> + u^t Sigma u / 2)
  double mgf(std::span<const double> u) const;
  /// Density; SingularCovariance unless invertible().
  double pdf(std::span<const double> x) const;
  /// n x d draws Y = m + T^t diag(sqrt(delta)) Z; block-seeded.
  Matrix sample(std::size_t n, std::uint64_t seed, kernels::Exec exec = kernels::Exec::Parallel) const;
  /// (x - m)^t Sigma^{-1} (x - m) per row.
  std::vector<double> quadratic_form_stat(const Matrix& x) const;

 private:
  std::vector<double> mean_;
  SymMatrix cov_;
  EigenSystem eigen_;
  std::vector<double> delta_;
  bool invertible_ = false;
};

/// Law of A X + B: N_k(A m + B, A Sigma A^t).
GaussianVector affine_law(const GaussianVector& gv, const Matrix& a, std::span<const double> b);

/// Sub-vector (coordinates in the given order).
GaussianVector marginal(const GaussianVector& gv, std::span<const std::size_t> coords);

struct FactorizationReport {
  double max_mgf_error;  // |mgf(joint) - mgf(block1) mgf(block2)| / mgf(joint)
  double mc_deviation;   // empirical cf factorization test on one coordinate pair
  bool passed;
};

/// Independence of the blocks [0, split) and [split, d) for a joint with a
/// zero cross-covariance block (otherwise NonZeroCrossCovariance).
FactorizationReport uncorrelated_independence_check(const GaussianVector& joint, std::size_t split,
                                                    std::size_t mc_samples = 20000, std::uint64_t seed = 1);

}  // namespace probalab::gauss
