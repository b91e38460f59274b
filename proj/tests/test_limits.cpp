#include <doctest.h>

#include <cmath>
#include <vector>

#include "probalab/catalog.hpp"
#include "probalab/error.hpp"
#include "probalab/limits.hpp"

using namespace probalab;
using catalog::make_law;
using limits::TriangularSpec;
using limits::Verdict;

namespace {

TriangularSpec iid(const std::string& name, const catalog::Params& p = {}) {
  return TriangularSpec::iid_of(make_law(name, p));
}

TriangularSpec centered_exponential() {
  return TriangularSpec::iid_of(catalog::affine(make_law("exponential"), 1.0, -1.0));
}

}  // namespace

TEST_CASE("dyadic series verdicts") {
  CHECK(limits::series_verdict([](std::size_t k) { return 1.0 / (double(k) * k); }, 1 << 14).verdict == Verdict::Converges);
  CHECK(limits::series_verdict([](std::size_t k) { return 1.0 / double(k); }, 1 << 14).verdict == Verdict::Diverges);
  CHECK(limits::series_verdict([](std::size_t) { return 0.0; }, 1000).verdict == Verdict::Converges);
  const auto g = limits::series_verdict([](std::size_t k) { return std::ldexp(1.0, -int(k)); }, 64);
  CHECK(g.partial == doctest::Approx(1.0));
  CHECK(limits::to_string(Verdict::Inconclusive) == "INCONCLUSIVE");
}

TEST_CASE("weak law") {
  const auto r = limits::wlln_experiment(make_law("exponential"), {10, 100, 1000, 10000}, 200, 1);
  CHECK(r.criteria.at("eps=0.1,n=10000") == 0.0);
  CHECK(r.criteria.at("eps=0.1,n=10") > 0.3);
  CHECK(r.passed);
  const auto c = limits::wlln_experiment(make_law("constant", {{"a", 2.0}}), {10, 100}, 20, 1);
  for (const auto& [k, v] : c.criteria) CHECK(v == 0.0);
  try {
    limits::wlln_experiment(make_law("cauchy"), {10}, 10, 1);
    FAIL("expected UndefinedMoment");
  } catch (const ProbaError& e) {
    CHECK(e.kind() == ErrorKind::UndefinedMoment);
  }
}

TEST_CASE("strong law through the Kolmogorov criterion") {
  const auto r = limits::slln_kolmogorov_criterion(iid("rademacher"), [](std::size_t k) { return double(k); }, 1'000'000, 3);
  CHECK(r.criterion.verdict == Verdict::Converges);
  CHECK(r.tail_max < 0.05);
  CHECK(r.path.passed);

  const auto sq = limits::slln_kolmogorov_criterion(iid("rademacher"), [](std::size_t k) { return std::sqrt(double(k)); },
                                                    100000, 3);
  CHECK(sq.criterion.verdict != Verdict::Converges);
  CHECK_FALSE(sq.path.passed);

  const auto e = limits::slln_kolmogorov_criterion(iid("exponential"), [](std::size_t k) { return double(k); }, 1'000'000, 4);
  CHECK(std::abs(e.path.criteria.at("endpoint")) < 0.01);
}

TEST_CASE("three series") {
  const auto w = TriangularSpec::weighted(make_law("rademacher"), [](std::size_t k) { return std::ldexp(1.0, -int(k)); }, "2^-k");
  const auto c = limits::three_series_check(w, 1.0, 2000, 500, 8, 1);
  CHECK(c.prob.verdict == Verdict::Converges);
  CHECK(c.variance.verdict == Verdict::Converges);
  CHECK(c.mean.verdict == Verdict::Converges);
  CHECK(c.verdict == Verdict::Converges);
  CHECK(c.flatness < 1e-3);

  const auto d = limits::three_series_check(iid("rademacher"), 1.0, 4000, 500, 8, 1);
  CHECK(d.variance.verdict == Verdict::Diverges);
  CHECK(d.verdict == Verdict::Diverges);
  CHECK(d.flatness > 1.0);

  const auto z = limits::three_series_check(iid("constant", {{"a", 0.0}}), 1.0, 1000, 100, 4, 1);
  CHECK(z.verdict == Verdict::Converges);
  CHECK(z.flatness == 0.0);
}

TEST_CASE("truncated and absolute moments") {
  const auto e = make_law("exponential");
  // E|X - 1|^3 = 12/e - 2
  CHECK(limits::central_abs_moment(e, 1.0, 3.0) == doctest::Approx(12.0 / std::exp(1.0) - 2.0).epsilon(1e-8));
  // E[(X-1)^2 1(|X-1| > 2)] = int_3^inf (x-1)^2 e^-x dx = 10 e^-3
  CHECK(limits::truncated_second_moment(e, 1.0, 2.0) == doctest::Approx(10.0 * std::exp(-3.0)).epsilon(1e-8));
  CHECK(limits::truncated_second_moment(make_law("rademacher"), 0.0, 1.0) == 0.0);
  CHECK(limits::truncated_second_moment(make_law("rademacher"), 0.0, 0.5) == 1.0);
  // poisson(1) about 1 beyond radius 1.5: atoms 3, 4, ... via exact sum
  double ref = 0.0, pk = std::exp(-1.0);
  for (int k = 0; k < 40; ++k) {
    if (k > 0) pk /= k;
    if (std::abs(k - 1.0) > 1.5) ref += (k - 1.0) * (k - 1.0) * pk;
  }
  CHECK(limits::truncated_second_moment(make_law("poisson"), 1.0, 1.5) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("lindeberg, lyapounov, feller") {
  const auto r = iid("rademacher");
  CHECK(limits::lindeberg_g(r, 100, 0.2) == 0.0);
  CHECK(limits::lindeberg_g(r, 100, 0.05) == 1.0);

  const auto e = centered_exponential();
  const double r100 = limits::lyapounov_ratio(e, 100, 1.0);
  const double r400 = limits::lyapounov_ratio(e, 400, 1.0);
  CHECK(r100 == doctest::Approx((12.0 / std::exp(1.0) - 2.0) / 10.0).epsilon(1e-6));
  CHECK(r100 / r400 == doctest::Approx(2.0).epsilon(1e-9));

  double prev = 2.0;
  for (double eps : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5}) {
    const double g = limits::lindeberg_g(e, 1000, eps);
    CHECK(g <= prev);
    prev = g;
  }
  CHECK(limits::feller_max(e, 250) == doctest::Approx(1.0 / 250.0).epsilon(1e-14));
  // non-identical: sigma_k = k gives max sigma^2 / s_n^2 = n^2 / sum k^2
  const auto w = TriangularSpec::weighted(make_law("rademacher"), [](std::size_t k) { return double(k); }, "k");
  const double n = 50;
  CHECK(limits::feller_max(w, 50) == doctest::Approx(n * n / (n * (n + 1) * (2 * n + 1) / 6)).epsilon(1e-12));
}

TEST_CASE("normal grid and sup gap") {
  const auto& g = limits::normal_grid();
  CHECK(g.x.size() == 2001);
  CHECK(g.phi[1000] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(g.x[1000]) < 1e-9);
  std::vector<double> all_high(100, 100.0);
  CHECK(limits::sup_gap(all_high) == doctest::Approx(g.phi.back()));
}

TEST_CASE("berry-esseen") {
  const auto b = iid("bernoulli", {{"p", 0.5}});
  const auto small = limits::berry_esseen_gap(b, 100, 100000, 7);
  CHECK(small.bound == doctest::Approx(3.6).epsilon(1e-12));
  CHECK(small.beta3 == doctest::Approx(100.0 / 8.0).epsilon(1e-12));
  CHECK(small.gap == doctest::Approx(0.04).epsilon(0.5));
  CHECK(small.holds);

  const auto big = limits::berry_esseen_gap(b, 10000, 100000, 7);
  CHECK(big.bound == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(big.gap < 0.01);
  CHECK(big.slack == doctest::Approx(1.5 / std::sqrt(1e5)));

  const auto z = limits::berry_esseen_gap(iid("gaussian"), 30, 40000, 2);
  CHECK(z.gap < 3.0 / std::sqrt(4e4));

  // bound side over a spread of laws, smaller runs
  for (const char* name : {"exponential", "uniform", "poisson", "laplace", "gamma", "rademacher", "geometric", "beta"}) {
    CAPTURE(name);
    CHECK(limits::berry_esseen_gap(iid(name), 20, 5000, 3).holds);
  }
}

TEST_CASE("berry-esseen: serial and parallel agree") {
  const auto e = iid("exponential");
  const auto a = limits::berry_esseen_gap(e, 25, 4000, 5, kernels::Exec::Serial);
  const auto b = limits::berry_esseen_gap(e, 25, 4000, 5, kernels::Exec::Parallel);
  CHECK(a.gap == b.gap);
}

TEST_CASE("iterated logarithm") {
  const auto r = limits::lil_trajectory(200000, 11, 3);
  CHECK(r.running_max.size() == 3);
  CHECK(!r.trajectory.empty());
  const auto scaled = limits::lil_trajectory(200000, 11, 3, 2.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(scaled.running_max[i] == doctest::Approx(r.running_max[i]).epsilon(1e-12));
  CHECK_THROWS_AS(limits::lil_trajectory(15, 1), ProbaError);
  const auto s1 = limits::lil_trajectory(50000, 4, 2, 1.0, kernels::Exec::Serial);
  const auto s2 = limits::lil_trajectory(50000, 4, 2, 1.0, kernels::Exec::Parallel);
  CHECK(s1.running_max == s2.running_max);
}

TEST_CASE("summation methods") {
  std::vector<double> inv(1000);
  for (std::size_t k = 0; k < inv.size(); ++k) inv[k] = 1.0 / double(k + 1);
  const auto m = limits::cesaro(inv);
  CHECK(m.back() < 0.01);
  CHECK(m.front() == 1.0);

  std::vector<double> alt(1000);
  for (std::size_t k = 0; k < alt.size(); ++k) alt[k] = (k % 2 == 0) ? -1.0 : 1.0;
  CHECK(std::abs(limits::cesaro(alt).back()) <= 1e-3);

  const std::size_t n = 1'000'000;
  std::vector<double> x(n), b(n);
  for (std::size_t k = 1; k <= n; ++k) {
    x[k - 1] = ((k % 2) ? -1.0 : 1.0) / double(k);
    b[k - 1] = double(k);
  }
  CHECK(std::abs(limits::kronecker_weighted(x, b).back()) < 1e-3);
  std::vector<double> bad{1.0, 0.5};
  std::vector<double> two{1.0, 1.0};
  CHECK_THROWS_AS(limits::kronecker_weighted(two, bad), ProbaError);

  // the Cesaro matrix as a Toeplitz rule
  const auto t = limits::toeplitz_mean(alt, [](std::size_t nn, std::size_t) { return 1.0 / double(nn); });
  const auto c = limits::cesaro(alt);
  for (std::size_t i = 0; i < c.size(); i += 97) CHECK(t.means[i] == doctest::Approx(c[i]).scale(1.0));
  CHECK(t.max_row_abs_sum == doctest::Approx(1.0));
}
