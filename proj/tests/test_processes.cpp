#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "probalab/catalog.hpp"
#include "probalab/charfn.hpp"
#include "probalab/error.hpp"
#include "probalab/ks.hpp"
#include "probalab/processes.hpp"
#include "probalab/special.hpp"

using namespace probalab;
using process::column;
using process::FiniteDimFamily;

namespace {

double normal_cdf(double x) { return special::normal_cdf(x); }

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double cov_of(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean_of(a), mb = mean_of(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("generalized inverse") {
  const auto id = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(process::gen_inverse(id, 0.3) == doctest::Approx(0.3).epsilon(1e-11));
  const auto bern = [](double x) { return x < 0 ? 0.0 : (x < 1 ? 0.7 : 1.0); };
  CHECK(std::abs(process::gen_inverse(bern, 0.7)) < 1e-11);
  CHECK(process::gen_inverse(bern, 0.71) == doctest::Approx(1.0).epsilon(1e-11));

  const auto expo = [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); };
  // right-limit identity at a point of strict increase
  CHECK(process::gen_inverse(expo, expo(0.5) + 1e-13) == doctest::Approx(0.5).epsilon(1e-9));
  // bracket is widened for far quantiles; 1 - 1e-9 itself is only good to ~1e-7 relative here
  CHECK(process::gen_inverse(expo, 1.0 - 1e-9) == doctest::Approx(-std::log(1e-9)).epsilon(1e-6));

  const std::vector<double> probes{-1.0, 0.0, 0.3, 0.99, 1.0, 2.0};
  CHECK(process::inverse_lemma_check(bern, probes).holds);
  CHECK(process::inverse_lemma_check(expo, probes).holds);
}

TEST_CASE("sklar copulas") {
  const auto f = [](double x) { return normal_cdf(x); };
  const std::vector<double> xs{-2.0, -0.5, 0.0, 0.7, 1.5};

  const auto indep_joint = [&](double x, double y) { return f(x) * f(y); };
  const auto c = process::sklar_copula(indep_joint, f, f);
  CHECK(c(0.3, 0.6) == doctest::Approx(0.18).epsilon(1e-9));
  const auto rep = process::copula_check(c, indep_joint, f, f, xs);
  CHECK(rep.margin_error < 1e-9);
  CHECK(rep.reconstruction_error < 1e-9);

  const auto como = [&](double x, double y) { return std::min(f(x), f(y)); };
  const auto cm = process::sklar_copula(como, f, f);
  CHECK(cm(0.3, 0.6) == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(cm(0.8, 0.2) == doctest::Approx(0.2).epsilon(1e-9));

  const auto lower = [&](double x, double y) { return std::max(f(x) + f(y) - 1.0, 0.0); };
  CHECK(lower(0.0, 0.0) == 0.0);
  const auto cl = process::sklar_copula(lower, f, f);
  CHECK(cl(0.7, 0.6) == doctest::Approx(0.3).epsilon(1e-9));

  // a catalog pair with different margins
  const auto ge = catalog::make_law("gamma", {{"a", 2.0}, {"b", 1.0}});
  const auto g = [&](double x) { return ge.law.cdf(x); };
  const auto mixed = [&](double x, double y) { return f(x) * g(y); };
  const std::vector<double> grid{0.1, 0.5, 1.0, 2.0, 4.0};
  CHECK(process::copula_check(process::sklar_copula(mixed, f, g), mixed, f, g, grid).reconstruction_error < 1e-9);
}

TEST_CASE("finite-dimensional coherence") {
  const auto zero = [](double) { return 0.0; };
  const auto bmin = [](double s, double t) { return std::min(s, t); };
  const auto fam = FiniteDimFamily::from_functions(zero, bmin, {{0.5, 1.0}, {0.5, 1.0, 2.0}});
  const auto rep = process::coherence_check(fam);
  CHECK(rep.pairs_checked == 1);
  CHECK(rep.max_gap == 0.0);

  // permuted tuple: stored sorted with its permutation
  const auto perm = FiniteDimFamily::from_functions(zero, bmin, {{1.0, 0.5}, {2.0, 0.5, 1.0}});
  CHECK(perm.entries()[0].times == std::vector<double>{0.5, 1.0});
  CHECK(process::coherence_check(perm).max_gap == 0.0);

  const auto one = FiniteDimFamily::from_functions(zero, bmin, {{0.3}});
  CHECK(process::coherence_check(one).pairs_checked == 0);

  auto bad = FiniteDimFamily::from_functions(zero, bmin, {{0.5, 1.0}});
  const std::vector<double> t{1.0};
  bad.add(t, {0.0}, linalg::Matrix(1, 1, 2.0));
  try {
    process::coherence_check(bad);
    FAIL("expected IncoherentFamily");
  } catch (const ProbaError& e) {
    CHECK(e.kind() == ErrorKind::IncoherentFamily);
  }
  const std::vector<double> rep_t{1.0, 1.0};
  CHECK_THROWS_AS(bad.add(rep_t, {0.0, 0.0}, linalg::Matrix(2, 2, 1.0)), ProbaError);

  // covariance-function families pass on random nested tuples
  Stream s(12, 0);
  std::vector<std::vector<double>> tuples;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> big;
    for (int k = 0; k < 4; ++k) big.push_back(0.1 + (s.bits() % 1000) / 100.0 + k * 1e-3);
    tuples.push_back(big);
    tuples.push_back({big[2], big[0]});
  }
  const auto exp_kernel = [](double a, double b) { return std::exp(-std::abs(a - b)); };
  const auto r = process::coherence_check(FiniteDimFamily::from_functions([](double x) { return x; }, exp_kernel, tuples));
  CHECK(r.pairs_checked >= 50);
  CHECK(r.max_gap < 1e-12);
}

TEST_CASE("poisson process") {
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto p = process::poisson_process(1.0, grid, 100000, 5);
  const auto n1 = column(p.paths.values, 2);
  CHECK(std::abs(mean_of(n1) - 1.0) < 0.02);
  CHECK(std::abs(p.mean_inter_arrival - 1.0) < 3.0 / std::sqrt(static_cast<double>(p.gaps)));
  for (double v : column(p.paths.values, 0)) CHECK(v == 0.0);
  bool monotone = true;
  for (std::size_t r = 0; r < p.paths.values.rows(); ++r)
    for (std::size_t j = 1; j < grid.size(); ++j) {
      const double a = p.paths.values(r, j - 1), b = p.paths.values(r, j);
      monotone = monotone && b >= a && b == std::floor(b);
    }
  CHECK(monotone);
  CHECK(process::poisson_total_variation(p.paths, 2, 1.0) < 0.01);

  const auto q = process::poisson_process(4.0, grid, 20000, 5);
  CHECK(std::abs(mean_of(column(q.paths.values, 2)) - 4.0) < 0.06);

  const std::vector<double> far{1000.0};
  try {
    process::poisson_process(50.0, far, 1, 1, kernels::Exec::Serial, 1000);
    FAIL("expected SaturationError");
  } catch (const ProbaError& e) {
    CHECK(e.kind() == ErrorKind::SaturationError);
  }
  const auto a = process::poisson_process(2.0, grid, 3000, 9, kernels::Exec::Serial);
  const auto b = process::poisson_process(2.0, grid, 3000, 9, kernels::Exec::Parallel);
  CHECK(a.paths.values.data() == b.paths.values.data());
}

TEST_CASE("brownian motion") {
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const auto bm = process::brownian_motion(grid, 200000, 3);
  const auto b05 = column(bm.values, 0), b1 = column(bm.values, 1), b2 = column(bm.values, 2);
  CHECK(std::abs(cov_of(b05, b1) - 0.5) < 0.01);
  CHECK(std::abs(cov_of(b1, b1) - 1.0) < 0.01);
  CHECK(std::abs(cov_of(b1, b2) - 1.0) < 0.015);
  // B_2 - B_0.5 = (B_2 - B_1) + (B_1 - B_0.5)
  for (std::size_t r = 0; r < 1000; ++r) {
    const double whole = b2[r] - b05[r];
    const double parts = (b2[r] - b1[r]) + (b1[r] - b05[r]);
    CHECK(whole == doctest::Approx(parts).epsilon(1e-14).scale(1.0));
  }
  const std::vector<double> one{0.7};
  const auto single = process::brownian_motion(one, 50000, 4);
  CHECK(ks::one_sample(column(single.values, 0), [](double x) { return normal_cdf(x / std::sqrt(0.7)); }).passed);
  const std::vector<double> bad{1.0, 0.5};
  CHECK_THROWS_AS(process::brownian_motion(bad, 10, 1), ProbaError);
  CHECK(process::brownian_motion(grid, 1000, 2, kernels::Exec::Serial).values.data() ==
        process::brownian_motion(grid, 1000, 2, kernels::Exec::Parallel).values.data());
}

TEST_CASE("gaussian process") {
  const std::vector<double> grid{0.25, 0.5, 1.0};
  const auto zero = [](double) { return 0.0; };
  const auto gp = process::gaussian_process(zero, [](double s, double t) { return std::min(s, t); }, grid, 50000, 6);
  const auto bm = process::brownian_motion(grid, 50000, 7);
  for (std::size_t j = 0; j < grid.size(); ++j)
    CHECK(ks::statistic_two_sample(column(gp.values, j), column(bm.values, j)) < 2.0 * std::sqrt(2.0 / 50000));

  const auto flat = process::gaussian_process(zero, [](double, double) { return 1.0; }, grid, 100, 8);
  for (std::size_t r = 0; r < 100; ++r) {
    CHECK(flat.values(r, 0) == doctest::Approx(flat.values(r, 1)).epsilon(1e-12));
    CHECK(flat.values(r, 0) == doctest::Approx(flat.values(r, 2)).epsilon(1e-12));
  }
  const auto white = process::gaussian_process(zero, [](double s, double t) { return s == t ? 1.0 : 0.0; }, grid, 100000, 9);
  const auto c0 = column(white.values, 0), c2 = column(white.values, 2);
  CHECK(std::abs(cov_of(c0, c2)) < 0.01);
  CHECK(cf::independence_factorization_test(c0, c2, cf::default_probe_grid()) < 0.02);

  CHECK_THROWS_AS(process::gaussian_process(zero, [](double s, double t) { return s == t ? -1.0 : 0.0; }, grid, 10, 1),
                  ProbaError);
}
