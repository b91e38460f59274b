#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "probalab/catalog.hpp"
#include "probalab/charfn.hpp"
#include "probalab/error.hpp"
#include "probalab/kernels.hpp"
#include "probalab/ks.hpp"

using namespace probalab;
using catalog::make_law;

TEST_CASE("closed-form moments") {
  const auto b = make_law("bernoulli", {{"p", 0.3}});
  CHECK(*b.moments.mean == doctest::Approx(0.3));
  CHECK(*b.moments.variance == doctest::Approx(0.21));
  const auto u = make_law("uniform", {{"a", 0.0}, {"b", 1.0}});
  CHECK(*u.moments.mean == doctest::Approx(0.5));
  CHECK(*u.moments.variance == doctest::Approx(1.0 / 12.0));
  // rate convention
  const auto g = make_law("gamma", {{"a", 2.0}, {"b", 3.0}});
  CHECK(*g.moments.mean == doctest::Approx(2.0 / 3.0));
  CHECK(*g.moments.variance == doctest::Approx(2.0 / 9.0));
}

TEST_CASE("undefined moments are absent, not NaN") {
  CHECK_FALSE(make_law("cauchy").moments.mean.has_value());
  CHECK_FALSE(make_law("student", {{"n", 2.0}}).moments.variance.has_value());
  CHECK_FALSE(make_law("fisher", {{"n", 3.0}, {"m", 2.0}}).moments.mean.has_value());
  CHECK_THROWS_AS(make_law("cauchy").moments.require_mean(), ProbaError);
}

TEST_CASE("registry laws are consistent") {
  for (const auto& info : catalog::registry()) {
    CAPTURE(info.name);
    const auto e = make_law(info.name);
    CHECK(e.moments.consistent());
    if (e.name == "gig" || e.name == "gh" || e.name == "sgh") continue;
    CHECK(catalog::total_mass(e) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("unknown names and bad parameters") {
  try {
    make_law("no_such_law");
    FAIL("expected UnknownLaw");
  } catch (const ProbaError& e) {
    CHECK(e.kind() == ErrorKind::UnknownLaw);
  }
  try {
    make_law("gamma", {{"a", -1.0}});
    FAIL("expected DomainError");
  } catch (const ProbaError& e) {
    CHECK(e.kind() == ErrorKind::DomainError);
  }
}

TEST_CASE("generalized inverse") {
  CHECK(catalog::quantile(make_law("uniform"), 0.25) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(catalog::quantile(make_law("exponential"), 1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(catalog::quantile(make_law("bernoulli", {{"p", 0.3}}), 0.5) == 0.0);
  CHECK(catalog::quantile(make_law("bernoulli", {{"p", 0.3}}), 0.71) == 1.0);
  CHECK_THROWS_AS(catalog::quantile(make_law("uniform"), 1.0), ProbaError);
  // bisection path against the closed gamma(2, 1) cdf 1 - (1 + x) e^-x
  const double q = catalog::quantile(make_law("gamma", {{"a", 2.0}, {"b", 1.0}}), 0.6);
  CHECK(1.0 - (1.0 + q) * std::exp(-q) == doctest::Approx(0.6).epsilon(1e-10));
}

TEST_CASE("sampling") {
  const auto c = catalog::sample(make_law("constant", {{"a", 5.0}}), 3, 1);
  CHECK(c == std::vector<double>{5.0, 5.0, 5.0});

  const auto z = catalog::sample(make_law("gaussian"), 1'000'000, 3);
  double m = 0.0, m2 = 0.0;
  for (double x : z) m += x;
  m /= static_cast<double>(z.size());
  for (double x : z) m2 += (x - m) * (x - m);
  CHECK(m2 / static_cast<double>(z.size()) == doctest::Approx(1.0).epsilon(0.01));

  const auto p = catalog::sample(make_law("poisson", {{"lambda", 2.0}}), 1'000'000, 4);
  const double zeros = static_cast<double>(std::count(p.begin(), p.end(), 0.0)) / 1e6;
  CHECK(std::abs(zeros - std::exp(-2.0)) < 0.002);

  CHECK(catalog::sample(make_law("gamma"), 1000, 9) == catalog::sample(make_law("gamma"), 1000, 9));
  CHECK(catalog::sample(make_law("gamma"), 1000, 9) != catalog::sample(make_law("gamma"), 1000, 10));
  CHECK_THROWS_AS(catalog::sample(make_law("gig"), 10, 1), ProbaError);
}

TEST_CASE("student and fisher transforms") {
  CHECK(*catalog::transform_student(5.0).moments.variance == doctest::Approx(5.0 / 3.0));
  CHECK(*catalog::transform_fisher(3.0, 6.0).moments.mean == doctest::Approx(1.5));
  CHECK(catalog::transform_student(1.0).law.density(0.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
  // t(n) density against the direct formula
  const double n = 7.0;
  const auto t = catalog::transform_student(n);
  for (double x : {-2.0, 0.3, 1.7}) {
    const double ref = std::tgamma((n + 1) / 2) / (std::sqrt(n * std::numbers::pi) * std::tgamma(n / 2)) *
                       std::pow(1 + x * x / n, -(n + 1) / 2);
    CHECK(t.law.density(x) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("gamma additivity by KS") {
  CHECK(catalog::gamma_sum_check(1.0, 1.0, 1.0, 100000, 5).passed);
  CHECK(catalog::gamma_sum_check(0.5, 0.5, 0.5, 100000, 6).passed);
  CHECK_THROWS_AS(catalog::gamma_sum_check(1.0, 0.0, 1.0), ProbaError);
}

TEST_CASE("squared normal is chi-square with one degree") {
  const std::size_t n = 100000;
  auto z2 = kernels::sample([](Stream& s) { const double z = s.normal(); return z * z; }, n, 21);
  const auto chi = catalog::sample(make_law("chi_square", {{"d", 1.0}}), n, 22);
  CHECK(ks::statistic_two_sample(z2, chi) < 2.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("difference of exponentials is laplace") {
  const double lambda = 1.5;
  const auto d = kernels::sample([&](Stream& s) { return s.exponential(lambda) - s.exponential(lambda); }, 100000, 8);
  const auto cdf = [&](double x) {
    return x < 0 ? 0.5 * std::exp(lambda * x) : 1.0 - 0.5 * std::exp(-lambda * x);
  };
  CHECK(ks::one_sample(d, cdf).passed);
  const auto lap = make_law("symmetrized_exponential", {{"lambda", lambda}});
  for (double x : {-1.0, 0.0, 0.4})
    CHECK(lap.law.density(x) == doctest::Approx(0.5 * lambda * std::exp(-lambda * std::abs(x))));
}

TEST_CASE("cf derivatives at zero recover moments") {
  for (const auto& info : catalog::registry()) {
    const auto e = make_law(info.name);
    if (!e.cf || !e.moments.mean) continue;
    CAPTURE(info.name);
    // central differences carry an h^2 E|X|^3 / 6 error
    const double scale = std::max(1.0, std::abs(*e.moments.mean));
    CHECK(std::abs(cf::moment_from_cf(*e.cf, 1) - *e.moments.mean) < 1e-5 * scale * scale * scale);
    const auto raw2 = e.moments.raw.find(2);
    if (raw2 != e.moments.raw.end() && e.moments.variance)
      CHECK(std::abs(cf::moment_from_cf(*e.cf, 2) - raw2->second) < 1e-4 * std::max(1.0, raw2->second));
  }
}

TEST_CASE("affine law") {
  const auto e = catalog::affine(make_law("exponential"), 2.0, 1.0);
  CHECK(*e.moments.mean == doctest::Approx(3.0));
  CHECK(*e.moments.variance == doctest::Approx(4.0));
  CHECK(e.law.cdf(3.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(catalog::expect(e, [](double x) { return x; }) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("expectations with endpoint singularities") {
  // E X for gamma(0.3, 1) and E (1 - X) for beta(3, 0.6): both densities blow up at an endpoint
  CHECK(catalog::expect(make_law("gamma", {{"a", 0.3}, {"b", 1.0}}), [](double x) { return x; }) ==
        doctest::Approx(0.3).epsilon(1e-8));
  const auto b = make_law("beta", {{"a", 3.0}, {"b", 0.6}});
  CHECK(catalog::expect(b, [](double x) { return 1.0 - x; }) == doctest::Approx(0.6 / 3.6).epsilon(1e-8));
  CHECK(catalog::total_mass(b) == doctest::Approx(1.0).epsilon(1e-9));
}
