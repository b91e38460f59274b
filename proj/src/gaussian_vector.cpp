#include "probalab/gaussian_vector.hpp"

#include <cmath>
#include <numbers>

#include "probalab/charfn.hpp"
#include "probalab/error.hpp"

namespace probalab::gauss {

namespace {
constexpr double kClamp = 1e-12;
}

GaussianVector::GaussianVector(std::vector<double> mean, SymMatrix cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  require(mean_.size() == cov_.dim(), ErrorKind::ShapeMismatch, "mean and covariance dimensions differ");
  eigen_ = linalg::eigendecompose(cov_);
  delta_ = eigen_.delta;
  const double scale = std::max(1.0, linalg::max_abs(cov_.matrix()));
  invertible_ = true;
  for (double& d : delta_) {
    if (d < -kClamp * scale) fail(ErrorKind::NotPositiveSemidefinite, "covariance has a negative eigenvalue");
    if (d < 0.0) d = 0.0;
    if (d <= kClamp) invertible_ = false;
  }
}

GaussianVector GaussianVector::standard(std::size_t d) {
  return GaussianVector(std::vector<double>(d, 0.0), SymMatrix::identity(d));
}

double GaussianVector::determinant() const {
  double p = 1.0;
  for (double d : eigen_.delta) p *= d;
  return p;
}

double GaussianVector::mgf(std::span<const double> u) const {
  require(u.size() == dim(), ErrorKind::ShapeMismatch, "mgf argument dimension");
  return std::exp(linalg::dot(mean_, u) + 0.5 * cov_.quadratic(u));
}

namespace {

// Coordinates of x - m in the eigenbasis, each divided by sqrt(delta).
double mahalanobis(const GaussianVector& gv, std::span<const double> x) {
  const std::size_t d = gv.dim();
  double q = 0.0;
  const Matrix& t = gv.eigen().t;
  for (std::size_t r = 0; r < d; ++r) {
    double y = 0.0;
    for (std::size_t k = 0; k < d; ++k) y += t(r, k) * (x[k] - gv.mean()[k]);
    q += y * y / gv.variances()[r];
  }
  return q;
}

}  // namespace

double GaussianVector::pdf(std::span<const double> x) const {
  require(x.size() == dim(), ErrorKind::ShapeMismatch, "pdf argument dimension");
  require(invertible_, ErrorKind::SingularCovariance, "pdf needs an invertible covariance");
  const double q = mahalanobis(*this, x);
  const double d = static_cast<double>(dim());
  return std::exp(-0.5 * q) / (std::sqrt(determinant()) * std::pow(2.0 * std::numbers::pi, d / 2.0));
}

Matrix GaussianVector::sample(std::size_t n, std::uint64_t seed, kernels::Exec exec) const {
  const std::size_t d = dim();
  Matrix out(n, d);
  std::vector<double> root(d);
  for (std::size_t r = 0; r < d; ++r) root[r] = std::sqrt(delta_[r]);
  const Matrix& t = eigen_.t;
  kernels::for_blocks(
      n, kernels::kBlock, seed,
      [&](Stream& s, std::size_t begin, std::size_t end) {
        std::vector<double> z(d);
        for (std::size_t i = begin; i < end; ++i) {
          for (std::size_t r = 0; r < d; ++r) z[r] = root[r] * s.normal();
          auto row = out.row(i);
          for (std::size_t k = 0; k < d; ++k) {
            double y = mean_[k];
            for (std::size_t r = 0; r < d; ++r) y += t(r, k) * z[r];
            row[k] = y;
          }
        }
      },
      exec);
  return out;
}

std::vector<double> GaussianVector::quadratic_form_stat(const Matrix& x) const {
  require(x.cols() == dim(), ErrorKind::ShapeMismatch, "sample dimension");
  require(invertible_, ErrorKind::SingularCovariance, "quadratic form needs an invertible covariance");
  std::vector<double> q(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) q[i] = mahalanobis(*this, x.row(i));
  return q;
}

GaussianVector affine_law(const GaussianVector& gv, const Matrix& a, std::span<const double> b) {
  require(a.cols() == gv.dim() && b.size() == a.rows(), ErrorKind::ShapeMismatch, "affine map shapes");
  std::vector<double> m = a * std::span<const double>(gv.mean());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] += b[i];
  Matrix c = a * gv.cov().matrix() * a.transpose();
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = i + 1; j < c.cols(); ++j) c(j, i) = c(i, j);
  return GaussianVector(std::move(m), SymMatrix(std::move(c)));
}

GaussianVector marginal(const GaussianVector& gv, std::span<const std::size_t> coords) {
  Matrix a(coords.size(), gv.dim());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    require(coords[i] < gv.dim(), ErrorKind::ShapeMismatch, "coordinate out of range");
    a(i, coords[i]) = 1.0;
  }
  const std::vector<double> zero(coords.size(), 0.0);
  return affine_law(gv, a, zero);
}

FactorizationReport uncorrelated_independence_check(const GaussianVector& joint, std::size_t split,
                                                    std::size_t mc_samples, std::uint64_t seed) {
  const std::size_t d = joint.dim();
  require(split > 0 && split < d, ErrorKind::ShapeMismatch, "split must leave two nonempty blocks");
  for (std::size_t i = 0; i < split; ++i)
    for (std::size_t j = split; j < d; ++j)
      require(joint.cov()(i, j) == 0.0, ErrorKind::NonZeroCrossCovariance, "cross-covariance block is not zero");

  std::vector<std::size_t> first(split);
  std::vector<std::size_t> second(d - split);
  for (std::size_t i = 0; i < split; ++i) first[i] = i;
  for (std::size_t i = split; i < d; ++i) second[i - split] = i;
  const GaussianVector g1 = marginal(joint, first);
  const GaussianVector g2 = marginal(joint, second);

  // Probe grid: each coordinate of u in {-1, -0.5, 0.5, 1}, cycled.
  const double probes[] = {-1.0, -0.5, 0.5, 1.0};
  double worst = 0.0;
  std::vector<double> u(d);
  for (int k = 0; k < 64; ++k) {
    for (std::size_t i = 0; i < d; ++i) u[i] = probes[(k + 3 * i + (k / 4) * i) % 4];
    const std::span<const double> uu(u);
    const double whole = joint.mgf(uu);
    const double prod = g1.mgf(uu.first(split)) * g2.mgf(uu.subspan(split));
    worst = std::max(worst, std::abs(whole - prod) / whole);
  }

  const Matrix x = joint.sample(mc_samples, seed);
  std::vector<double> a(mc_samples);
  std::vector<double> b(mc_samples);
  for (std::size_t r = 0; r < mc_samples; ++r) {
    a[r] = x(r, 0);
    b[r] = x(r, split);
  }
  const auto grid = cf::default_probe_grid();
  const double dev = cf::independence_factorization_test(a, b, grid);
  return {worst, dev, worst < 1e-12 && dev < 0.05};
}

}  // namespace probalab::gauss
