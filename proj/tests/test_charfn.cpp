#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "probalab/catalog.hpp"
#include "probalab/charfn.hpp"
#include "probalab/error.hpp"
#include "probalab/kernels.hpp"

using namespace probalab;
using cf::CharFn;
using cf::Complex;
using catalog::make_law;

namespace {

const double kPi = std::numbers::pi;

CharFn closed(std::function<Complex(double)> f, bool integrable = true) { return CharFn{std::move(f), "test", integrable}; }

double abs_diff(const CharFn& a, const CharFn& b, double u) { return std::abs(a(u) - b(u)); }

}  // namespace

TEST_CASE("cf of a sum is the product") {
  const double p = 0.3;
  const int n = 7;
  const auto bern = *make_law("bernoulli", {{"p", p}}).cf;
  const std::vector<CharFn> copies(n, bern);
  const CharFn sum = cf::cf_of_sum(copies);
  const CharFn binom = closed([=](double u) { return std::pow(Complex(1 - p) + p * std::exp(Complex(0, u)), n); });
  for (double u : {-3.0, -0.5, 0.0, 0.7, 2.0, 10.0}) CHECK(abs_diff(sum, binom, u) < 1e-13);
  CHECK(abs_diff(sum, *make_law("binomial", {{"n", n}, {"p", p}}).cf, 1.3) < 1e-13);

  const std::vector<CharFn> chis(3, *make_law("chi_square", {{"d", 1.0}}).cf);
  const CharFn chi3 = closed([](double u) { return std::pow(Complex(1, -2 * u), -1.5); });
  for (double u : {-1.0, 0.25, 4.0}) CHECK(abs_diff(cf::cf_of_sum(chis), chi3, u) < 1e-13);

  const std::vector<CharFn> one{bern};
  CHECK(abs_diff(cf::cf_of_sum(one), bern, 0.9) == 0.0);
}

TEST_CASE("cf of an affine map") {
  const auto z = *make_law("gaussian").cf;
  const double s = 1.7, m = -0.4;
  const auto y = cf::cf_affine(z, s, m);
  for (double u : {-2.0, 0.3, 1.1}) {
    const Complex ref = std::exp(Complex(-s * s * u * u / 2, u * m));
    CHECK(std::abs(y(u) - ref) < 1e-14);
  }
  CHECK(abs_diff(cf::cf_affine(z, 1.0, 0.0), z, 0.8) == 0.0);

  const double l = 2.0;
  const auto e = *make_law("exponential", {{"lambda", l}}).cf;
  const std::vector<CharFn> pair{e, cf::cf_affine(e, -1.0, 0.0)};
  const auto sym = cf::cf_of_sum(pair);
  for (double u : {-5.0, 0.0, 0.4, 3.0}) CHECK(std::abs(sym(u) - l * l / (l * l + u * u)) < 1e-14);
}

TEST_CASE("inversion of F(b) - F(a)") {
  const auto z = *make_law("gaussian").cf;
  CHECK(cf::invert_cdf_difference(z, -1.0, 1.0, 50.0) == doctest::Approx(std::erf(1.0 / std::sqrt(2.0))).epsilon(1e-5));
  CHECK(cf::invert_cdf_difference(z, 0.7, 0.7, 50.0) == 0.0);
  CHECK(cf::invert_cdf_difference(z, -0.3, 1.2, 40.0) ==
        doctest::Approx(-cf::invert_cdf_difference(z, 1.2, -0.3, 40.0)).epsilon(1e-12));
  // an atom strictly inside counts fully, one at an end counts half
  const auto b = *make_law("bernoulli", {{"p", 0.5}}).cf;
  CHECK(std::abs(cf::invert_cdf_difference(b, -0.5, 0.5, 1e4) - 0.5) < 1e-3);
  CHECK(std::abs(cf::invert_cdf_difference(b, -0.5, 0.0, 1e4) - 0.25) < 1e-3);

  const auto ad = cf::invert_cdf_difference_adaptive(z, -1.0, 1.0);
  CHECK(ad.converged);
  CHECK(ad.value == doctest::Approx(0.682689492137).epsilon(1e-6));
}

TEST_CASE("density inversion") {
  const CharFn cauchy = closed([](double u) { return Complex(std::exp(-std::abs(u)), 0); });
  CHECK(cf::invert_density(cauchy, 0.0, 60.0).value == doctest::Approx(1.0 / kPi).epsilon(1e-8));
  const auto z = *make_law("gaussian").cf;
  CHECK(cf::invert_density(z, 0.0, 40.0).value == doctest::Approx(1.0 / std::sqrt(2 * kPi)).epsilon(1e-10));
  const CharFn lap = closed([](double u) { return Complex(1.0 / (1.0 + u * u), 0); });
  CHECK(std::abs(cf::invert_density(lap, 2.0, 65536.0).value - 0.5 * std::exp(-2.0)) < 1e-4);
  CHECK(std::abs(cf::invert_density(z, 1.0, 40.0).imag) < 1e-12);

  const CharFn not_integrable = closed([](double u) { return Complex(std::cos(u), 0); }, false);
  CHECK_THROWS_AS(cf::invert_density(not_integrable, 0.0, 10.0), ProbaError);
}

TEST_CASE("inverting a product of gamma cfs gives the gamma sum density") {
  const double a1 = 2.0, a2 = 3.0, b = 1.5;
  const std::vector<CharFn> two{*make_law("gamma", {{"a", a1}, {"b", b}}).cf, *make_law("gamma", {{"a", a2}, {"b", b}}).cf};
  CharFn prod = cf::cf_of_sum(two);
  prod.integrable_modulus = true;  // |phi| ~ |u|^-5
  const auto target = make_law("gamma", {{"a", a1 + a2}, {"b", b}});
  const double top = *target.moments.mean + 6 * std::sqrt(*target.moments.variance);
  double worst = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double x = top * i / 40.0;
    worst = std::max(worst, std::abs(cf::invert_density(prod, x, 400.0).value - target.law.density(x)));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("moments from the cf") {
  const auto g = *make_law("gamma", {{"a", 2.0}, {"b", 3.0}}).cf;
  CHECK(std::abs(cf::moment_from_cf(g, 1) - 2.0 / 3.0) < 1e-5);
  CHECK(std::abs(cf::moment_from_cf(g, 2) - (2.0 / 9.0 + 4.0 / 9.0)) < 1e-4);
}

TEST_CASE("convolution on a grid") {
  const double l = 1.0;
  const cf::Density e{[=](double x) { return x < 0 ? 0.0 : l * std::exp(-l * x); }, 0.0, 40.0};
  const cf::Density r{[=](double x) { return x > 0 ? 0.0 : l * std::exp(l * x); }, -40.0, 0.0};
  const auto c = cf::convolve_densities(e, r, {-20.0, 20.0, 2001});
  for (double x : {-3.0, -0.5, 0.0, 1.0, 2.5}) CHECK(std::abs(c(x) - 0.5 * l * std::exp(-l * std::abs(x))) < 1e-4);

  const cf::Density u{[](double x) { return (x >= 0 && x <= 1) ? 1.0 : 0.0; }, 0.0, 1.0};
  const auto tri = cf::convolve_densities(u, u, {0.0, 2.0, 801});
  CHECK(tri(1.0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(tri(0.5) == doctest::Approx(0.5).epsilon(1e-3));

  // narrow bump as an approximate identity
  const double w = 1e-3;
  const cf::Density bump{[=](double x) { return std::abs(x) <= w ? 0.5 / w : 0.0; }, -w, w};
  const cf::Density g{[](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * kPi); }, -10.0, 10.0};
  const auto gb = cf::convolve_densities(g, bump, {-8.0, 8.0, 1601});
  CHECK(std::abs(gb(0.5) - g.pdf(0.5)) < 1e-4);

  CHECK_THROWS_AS(cf::convolve_densities(u, u, {0.0, 0.5, 101}), ProbaError);
}

TEST_CASE("independence by the empirical cf") {
  const std::size_t n = 100000;
  const auto x = kernels::sample([](Stream& s) { return s.normal(); }, n, 31);
  const auto y = kernels::sample([](Stream& s) { return s.normal(); }, n, 32);
  const auto grid = cf::default_probe_grid();
  CHECK(cf::independence_factorization_test(x, y, grid) < 0.02);

  const std::vector<std::pair<double, double>> one{{1.0, 1.0}};
  const double same = cf::independence_factorization_test(x, x, one);
  CHECK(std::abs(same - std::abs(std::exp(-2.0) - std::exp(-1.0))) < 0.02);

  const std::vector<double> c(n, 3.0);
  CHECK(cf::independence_factorization_test(c, y, grid) < 1e-10);
  const std::vector<double> small(100, 0.0);
  CHECK_THROWS_AS(cf::independence_factorization_test(small, small, grid), ProbaError);
}

TEST_CASE("empirical cf grid: serial and parallel agree") {
  const auto x = kernels::sample([](Stream& s) { return s.uniform(); }, 5000, 1);
  const auto y = kernels::sample([](Stream& s) { return s.normal(); }, 5000, 2);
  const auto grid = cf::default_probe_grid();
  CHECK(kernels::empirical_cf_grid(x, y, grid, kernels::Exec::Serial) ==
        kernels::empirical_cf_grid(x, y, grid, kernels::Exec::Parallel));
}
