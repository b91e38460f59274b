#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <numbers>
#include <vector>

#include "probalab/error.hpp"
#include "probalab/gaussian_vector.hpp"
#include "probalab/ks.hpp"
#include "probalab/linalg.hpp"
#include "probalab/special.hpp"

using namespace probalab;
using gauss::GaussianVector;
using linalg::Matrix;
using linalg::SymMatrix;

namespace {

SymMatrix random_symmetric(Stream& s, std::size_t d) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = 2.0 * s.uniform() - 1.0;
  return SymMatrix(m);
}

Eigen::MatrixXd to_eigen(const SymMatrix& a) {
  Eigen::MatrixXd e(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) e(i, j) = a(i, j);
  return e;
}

}  // namespace

TEST_CASE("jacobi small cases") {
  const auto i2 = linalg::eigendecompose(SymMatrix::identity(2));
  CHECK(i2.delta == std::vector<double>{1.0, 1.0});
  CHECK(linalg::max_abs(i2.t - Matrix::identity(2)) == 0.0);

  const auto e = linalg::eigendecompose(SymMatrix::from_rows({{2, 1}, {1, 2}}));
  CHECK(e.delta[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(e.delta[1] == doctest::Approx(1.0).epsilon(1e-14));

  const auto z = linalg::eigendecompose(SymMatrix(Matrix(2, 2)));
  CHECK(z.delta == std::vector<double>{0.0, 0.0});

  CHECK_THROWS_AS(SymMatrix::from_rows({{1, 2}, {3, 1}}), ProbaError);
}

TEST_CASE("jacobi against Eigen on random symmetric matrices") {
  Stream s(2024, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + s.bits() % 16;
    const SymMatrix a = random_symmetric(s, d);
    const auto sys = linalg::eigendecompose(a);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(to_eigen(a));
    std::vector<double> mine = sys.delta, theirs(ref.eigenvalues().data(), ref.eigenvalues().data() + d);
    std::sort(mine.begin(), mine.end());
    std::sort(theirs.begin(), theirs.end());
    for (std::size_t i = 0; i < d; ++i) CHECK(mine[i] == doctest::Approx(theirs[i]).epsilon(1e-10).scale(1.0));

    // sorted by decreasing |delta|
    for (std::size_t i = 1; i < d; ++i) CHECK(std::abs(sys.delta[i - 1]) >= std::abs(sys.delta[i]));

    CHECK(linalg::max_abs(linalg::reconstruct(sys) - a.matrix()) < 1e-9);

    const double det = std::accumulate(sys.delta.begin(), sys.delta.end(), 1.0, std::multiplies<>());
    CHECK(det == doctest::Approx(to_eigen(a).determinant()).epsilon(1e-9).scale(1.0));

    // T is an isometry
    for (int k = 0; k < 10; ++k) {
      std::vector<double> x(d);
      for (double& v : x) v = s.normal();
      CHECK(linalg::norm2(sys.t * std::span<const double>(x)) == doctest::Approx(linalg::norm2(x)).epsilon(1e-12));
    }

    // a_ij = sum_h delta_h T_hi T_hj
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        double acc = 0.0;
        for (std::size_t h = 0; h < d; ++h) acc += sys.delta[h] * sys.t(h, i) * sys.t(h, j);
        worst = std::max(worst, std::abs(acc - a(i, j)));
      }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("cofactor determinant for d <= 4") {
  Stream s(7, 1);
  for (std::size_t d = 1; d <= 4; ++d) {
    const auto a = random_symmetric(s, d);
    const GaussianVector gv(std::vector<double>(d), SymMatrix(a.matrix() * a.matrix() + Matrix::identity(d)));
    const Eigen::MatrixXd e = to_eigen(gv.cov());
    CHECK(gv.determinant() == doctest::Approx(e.determinant()).epsilon(1e-10));
  }
}

TEST_CASE("mgf and pdf") {
  const auto z1 = GaussianVector::standard(1);
  const std::vector<double> zero1{0.0}, one1{1.0};
  CHECK(z1.mgf(zero1) == 1.0);
  CHECK(z1.mgf(one1) == doctest::Approx(std::exp(0.5)));
  CHECK(z1.pdf(zero1) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)));

  const GaussianVector g({1.0, 0.0}, SymMatrix::identity(2));
  const std::vector<double> u{1.0, 1.0};
  CHECK(g.mgf(u) == doctest::Approx(std::exp(2.0)));

  const auto z2 = GaussianVector::standard(2);
  const std::vector<double> zero2{0.0, 0.0};
  CHECK(z2.pdf(zero2) == doctest::Approx(1.0 / (2 * std::numbers::pi)));

  // oracle: Eigen inverse and determinant
  const SymMatrix cov = SymMatrix::from_rows({{2.0, 0.6, 0.1}, {0.6, 1.0, -0.3}, {0.1, -0.3, 1.5}});
  const std::vector<double> m{0.5, -1.0, 2.0};
  const GaussianVector h(m, cov);
  const std::vector<double> x{0.1, 0.2, 1.0};
  Eigen::Vector3d dx(x[0] - m[0], x[1] - m[1], x[2] - m[2]);
  const Eigen::MatrixXd ec = to_eigen(cov);
  const double q = dx.dot(ec.inverse() * dx);
  CHECK(h.pdf(x) == doctest::Approx(std::exp(-q / 2) / std::sqrt(std::pow(2 * std::numbers::pi, 3) * ec.determinant())));

  const GaussianVector sing({0.0, 0.0}, SymMatrix::from_rows({{1, 1}, {1, 1}}));
  CHECK_FALSE(sing.invertible());
  try {
    sing.pdf(zero2);
    FAIL("expected SingularCovariance");
  } catch (const ProbaError& e) {
    CHECK(e.kind() == ErrorKind::SingularCovariance);
  }
  CHECK_THROWS_AS(GaussianVector({0.0, 0.0}, SymMatrix::from_rows({{1, 2}, {2, 1}})), ProbaError);
}

TEST_CASE("sampling") {
  const GaussianVector zero({1.0, -2.0}, SymMatrix(Matrix(2, 2)));
  const Matrix c = zero.sample(100, 1);
  for (std::size_t r = 0; r < 100; ++r) {
    CHECK(c(r, 0) == 1.0);
    CHECK(c(r, 1) == -2.0);
  }

  const auto iid = GaussianVector::standard(2).sample(1'000'000, 2);
  CHECK(std::abs(linalg::covariance(iid)(0, 1)) < 0.005);

  const GaussianVector corr({0.0, 0.0}, SymMatrix::from_rows({{2, 1}, {1, 2}}));
  const auto cs = linalg::covariance(corr.sample(1'000'000, 3));
  CHECK(std::abs(cs(0, 1) - 1.0) < 0.01);
  CHECK(std::abs(cs(0, 0) - 2.0) < 0.02);

  CHECK(linalg::max_abs(corr.sample(5000, 4, kernels::Exec::Serial) - corr.sample(5000, 4, kernels::Exec::Parallel)) == 0.0);
}

TEST_CASE("affine images and marginals") {
  const GaussianVector g({1.0, 2.0}, SymMatrix::identity(2));
  const std::vector<double> zero2{0.0, 0.0};
  const auto same = gauss::affine_law(g, Matrix::identity(2), zero2);
  CHECK(same.mean() == g.mean());
  CHECK(linalg::max_abs(same.cov().matrix() - g.cov().matrix()) == 0.0);

  const std::vector<double> zero1{0.0};
  const auto s = gauss::affine_law(g, Matrix::from_rows({{1, 1}}), zero1);
  CHECK(s.mean()[0] == 3.0);
  CHECK(s.cov()(0, 0) == 2.0);

  const GaussianVector h({1.0, 2.0, 3.0}, SymMatrix::from_rows({{4, 1, 0}, {1, 3, 1}, {0, 1, 2}}));
  const std::vector<std::size_t> first{0};
  const auto m = gauss::marginal(h, first);
  CHECK(m.mean()[0] == 1.0);
  CHECK(m.cov()(0, 0) == 4.0);
  const std::vector<std::size_t> swap{2, 0};
  const auto m2 = gauss::marginal(h, swap);
  CHECK(m2.cov()(0, 1) == 0.0);
  CHECK(m2.cov()(0, 0) == 2.0);
  CHECK_THROWS_AS(gauss::affine_law(h, Matrix::from_rows({{1, 1}}), zero1), ProbaError);
}

TEST_CASE("quadratic form statistic") {
  const GaussianVector g({1.0, -1.0}, SymMatrix::identity(2));
  const Matrix at_mean = Matrix::from_rows({{1.0, -1.0}});
  CHECK(g.quadratic_form_stat(at_mean)[0] == 0.0);

  const auto q = g.quadratic_form_stat(g.sample(100000, 5));
  double mean = 0.0;
  for (double v : q) mean += v;
  CHECK(std::abs(mean / 1e5 - 2.0) < 0.05);
  CHECK(ks::one_sample(q, [](double x) { return special::gamma_p(1.0, x / 2.0); }).passed);

  const GaussianVector s1({0.5}, SymMatrix::from_rows({{4.0}}));
  const Matrix x = Matrix::from_rows({{2.5}});
  CHECK(s1.quadratic_form_stat(x)[0] == doctest::Approx(1.0));
}

TEST_CASE("uncorrelated blocks are independent") {
  const auto r1 = gauss::uncorrelated_independence_check(GaussianVector::standard(2), 1);
  CHECK(r1.passed);
  const GaussianVector d3({0, 0, 0}, SymMatrix::from_rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}));
  const auto r2 = gauss::uncorrelated_independence_check(d3, 1);
  CHECK(r2.passed);
  CHECK(r2.max_mgf_error < 1e-12);
  const GaussianVector cross({0, 0}, SymMatrix::from_rows({{1, 0.5}, {0.5, 1}}));
  try {
    gauss::uncorrelated_independence_check(cross, 1);
    FAIL("expected NonZeroCrossCovariance");
  } catch (const ProbaError& e) {
    CHECK(e.kind() == ErrorKind::NonZeroCrossCovariance);
  }
}

TEST_CASE("variance of combinations two ways") {
  Stream s(99, 0);
  for (int trial = 0; trial < 50; ++trial) {
    linalg::DiscreteJoint j;
    const std::size_t outcomes = 2 + s.bits() % 10;
    const std::size_t d = 1 + s.bits() % 4;
    double total = 0.0;
    for (std::size_t r = 0; r < outcomes; ++r) {
      std::vector<double> o(d);
      for (double& v : o) v = s.normal();
      j.outcomes.push_back(o);
      j.probs.push_back(s.uniform());
      total += j.probs.back();
    }
    for (double& p : j.probs) p /= total;
    std::vector<double> a(d), b(d);
    for (double& v : a) v = s.normal();
    for (double& v : b) v = s.normal();
    CHECK(j.combination_variance_direct(a) == doctest::Approx(j.combination_variance_expanded(a)).epsilon(1e-12).scale(1.0));
    CHECK(j.combination_covariance_direct(a, b) ==
          doctest::Approx(j.combination_covariance_expanded(a, b)).epsilon(1e-12).scale(1.0));
  }
}
