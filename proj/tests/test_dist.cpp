#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "probalab/catalog.hpp"
#include "probalab/error.hpp"
#include "probalab/kernels.hpp"
#include "probalab/law.hpp"

using namespace probalab;
using dist::Law;

namespace {

catalog::CatalogEntry law(const std::string& name, const catalog::Params& p = {}) {
  return catalog::make_law(name, p);
}

}  // namespace

TEST_CASE("expectation via the tail integral") {
  CHECK(dist::expectation_via_tail(law("exponential", {{"lambda", 1.0}}).law) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dist::expectation_via_tail(law("constant", {{"a", 0.0}}).law) == 0.0);
  // int_0^1 (1 - t) dt
  CHECK(dist::expectation_via_tail(law("uniform").law) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(dist::expectation_via_tail(law("poisson", {{"lambda", 3.5}}).law) == doctest::Approx(3.5).epsilon(1e-12));
  CHECK_THROWS_AS(dist::expectation_via_tail(law("gaussian").law), ProbaError);
}

TEST_CASE("tail sum matches the mean for every nonnegative catalog law") {
  for (const auto& info : catalog::registry()) {
    const auto e = law(info.name);
    if (!e.moments.mean || e.law.lep() < 0.0) continue;
    CAPTURE(info.name);
    CHECK(std::abs(dist::expectation_via_tail(e.law) - *e.moments.mean) < 1e-6);
  }
}

TEST_CASE("discrete tail sum brackets") {
  SUBCASE("bernoulli sum is 1 + p") {
    for (double p : {0.1, 0.5, 0.9}) {
      const auto b = dist::discrete_tail_sum(law("bernoulli", {{"p", p}}).law, 10);
      CHECK(b.sum == doctest::Approx(1.0 + p).epsilon(1e-15));
      CHECK_FALSE(b.truncation_warning);
    }
  }
  SUBCASE("constant zero") {
    const auto b = dist::discrete_tail_sum(law("constant", {{"a", 0.0}}).law, 10);
    CHECK(b.lower <= 0.0);
    CHECK(b.upper >= 0.0);
  }
  SUBCASE("poisson(2) contains the mean") {
    const auto b = dist::discrete_tail_sum(law("poisson", {{"lambda", 2.0}}).law, 60);
    CHECK(b.lower <= 2.0);
    CHECK(b.upper >= 2.0);
    CHECK(b.upper - b.lower == doctest::Approx(1.0));
    CHECK_FALSE(b.truncation_warning);
  }
  SUBCASE("short cut flags truncation") {
    CHECK(dist::discrete_tail_sum(law("poisson", {{"lambda", 2.0}}).law, 3).truncation_warning);
  }
}

TEST_CASE("empirical Lp norms") {
  const std::vector<double> ones{1, 1, 1, 1};
  CHECK(dist::lp_norm(ones, 2.0) == doctest::Approx(1.0));
  const std::vector<double> v{0.0, 2.0};
  CHECK(dist::lp_norm(v, 1.0) == doctest::Approx(1.0));
  CHECK(dist::lp_norm(v, INFINITY) == 2.0);
  CHECK_THROWS_AS(dist::lp_norm(v, 0.5), ProbaError);

  const auto z = kernels::sample([](Stream& s) { return s.normal(); }, 1'000'000, 11);
  CHECK(dist::lp_norm(z, 2.0) == doctest::Approx(1.0).epsilon(0.01));

  // nondecreasing in p, approaching the max norm
  double prev = 0.0;
  for (double p : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const double n = dist::lp_norm(z, p);
    CHECK(n >= prev);
    CHECK(n <= dist::lp_norm(z, INFINITY));
    prev = n;
  }
}

TEST_CASE("cdf decomposition") {
  const auto pois = law("poisson", {{"lambda", 2.0}}).law;
  const auto expo = law("exponential").law;

  auto [ac, disc] = dist::cdf_decompose(pois);
  CHECK(ac.weight == 0.0);
  CHECK(disc.weight == 1.0);
  auto [ac2, disc2] = dist::cdf_decompose(expo);
  CHECK(ac2.weight == 1.0);
  CHECK(disc2.weight == 0.0);

  const Law mix = Law::mixture("half", 0.5, expo, dist::point_mass(0.0));
  const auto parts = dist::cdf_decompose(mix);
  CHECK(parts.first.weight == 0.5);
  CHECK(parts.second.weight == 0.5);
  CHECK(mix.cdf(0.0) - mix.cdf_left(0.0) == doctest::Approx(0.5));
  CHECK(mix.cdf(-1e-9) == 0.0);

  for (const Law* l : {&pois, &expo, &mix}) {
    const auto p = dist::cdf_decompose(*l);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = -1.0 + 10.0 * i / 999.0;
      worst = std::max(worst, std::abs(dist::recombine_cdf(p, x) - l->cdf(x)));
    }
    CHECK(worst < 1e-14);
  }
  CHECK_THROWS_AS(Law::mixture("bad", 0.5, expo, dist::point_mass(0.0), 0.1), ProbaError);
}

TEST_CASE("finite law validation") {
  CHECK_THROWS_AS(Law::finite("x", {1.0, 0.0}, {0.5, 0.5}), ProbaError);
  CHECK_THROWS_AS(Law::finite("x", {0.0, 1.0}, {0.5, 0.6}), ProbaError);
  const Law l = Law::finite("x", {-1.0, 2.0}, {0.25, 0.75});
  CHECK(l.cdf(0.0) == 0.25);
  CHECK(l.mass(2.0) == 0.75);
  CHECK(l.cdf_left(2.0) == 0.25);
}
