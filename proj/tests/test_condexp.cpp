#include <doctest.h>

#include <cmath>
#include <vector>

#include "probalab/condexp.hpp"
#include "probalab/error.hpp"
#include "probalab/random.hpp"

using namespace probalab;
using condexp::FinitePartition;

namespace {

const std::vector<double> kDie{1, 2, 3, 4, 5, 6};
const std::vector<std::int64_t> kParity{1, 0, 1, 0, 1, 0};

}  // namespace

TEST_CASE("die given parity") {
  const FinitePartition part(kParity);
  CHECK(part.cells() == 2);
  const auto ce = condexp::cond_expect(kDie, part);
  CHECK(ce.table == std::vector<double>{3.0, 4.0});
  CHECK(ce.expand(part) == std::vector<double>{3, 4, 3, 4, 3, 4});
  const auto id = condexp::defining_identity(kDie, part);
  CHECK(id.exact);
  CHECK(id.max_float_gap == 0.0);

  CHECK(condexp::cond_expect(kDie, FinitePartition::single(6)).table == std::vector<double>{3.5});
  CHECK(condexp::cond_expect(kDie, FinitePartition::singletons(6)).table == kDie);
}

TEST_CASE("tower property") {
  const FinitePartition coarse(std::vector<std::int64_t>{0, 0, 0, 0, 1, 1});
  const FinitePartition fine(std::vector<std::int64_t>{0, 0, 1, 1, 2, 2});
  CHECK(fine.refines(coarse));
  CHECK_FALSE(coarse.refines(fine));
  CHECK(condexp::tower_check(kDie, coarse, fine).exact());
  CHECK(condexp::tower_check(kDie, FinitePartition::single(6), fine).exact());
  CHECK(condexp::tower_check(kDie, coarse, FinitePartition::singletons(6)).exact());
  try {
    condexp::tower_check(kDie, fine, FinitePartition(kParity));
    FAIL("expected NotARefinement");
  } catch (const ProbaError& e) {
    CHECK(e.kind() == ErrorKind::NotARefinement);
  }
}

TEST_CASE("conditional jensen and contraction") {
  const FinitePartition part(kParity);
  const auto r = condexp::conditional_jensen(kDie, part, [](double x) { return x * x; });
  CHECK(r.satisfied);
  // worst cell: (9, 35/3) or (16, 56/3), slack 8/3 either way
  CHECK(r.slack == doctest::Approx(8.0 / 3.0));
  const auto lin = condexp::conditional_jensen(kDie, part, [](double x) { return 3 * x - 1; });
  CHECK(std::abs(lin.slack) < 1e-12);

  Stream s(1, 0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 5 + s.bits() % 40;
    std::vector<double> x(n);
    std::vector<std::int64_t> l(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = s.normal();
      l[i] = static_cast<std::int64_t>(s.bits() % 4);
    }
    CHECK(condexp::contraction_check(x, FinitePartition(l)));
  }
}

TEST_CASE("L2 projection") {
  const auto die = condexp::l2_projection_check(kDie, FinitePartition(kParity));
  CHECK(die.optimal);
  CHECK(die.distance == doctest::Approx(8.0 / 3.0));
  CHECK(die.best_candidate > die.distance);
  const auto sing = condexp::l2_projection_check(kDie, FinitePartition::singletons(6));
  CHECK(sing.distance == 0.0);
  const std::vector<double> c(6, 2.5);
  CHECK(condexp::l2_projection_check(c, FinitePartition(kParity)).distance == 0.0);
}

TEST_CASE("total expectation by regression") {
  const auto r = condexp::regression_total_expectation(kDie, kParity);
  CHECK(r.exact);
  CHECK(r.recombined == 3.5);
  CHECK(r.labels == std::vector<std::int64_t>{1, 0});
  CHECK(r.cell_means == std::vector<double>{3.0, 4.0});

  const std::vector<std::int64_t> one(6, 9);
  CHECK(condexp::regression_total_expectation(kDie, one).cell_means == std::vector<double>{3.5});

  // two-point X against two-point Y, four cells by hand
  const std::vector<double> x{0, 0, 1, 1, 1, 0, 1, 1};
  const std::vector<std::int64_t> y{0, 0, 0, 1, 1, 1, 1, 1};
  const auto t = condexp::regression_total_expectation(x, y);
  CHECK(t.cell_means[0] == doctest::Approx(1.0 / 3.0));
  CHECK(t.cell_means[1] == doctest::Approx(4.0 / 5.0));
  CHECK(t.recombined == doctest::Approx(5.0 / 8.0));
  CHECK(t.exact);
}

TEST_CASE("operator laws on random instances") {
  Stream s(77, 0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + s.bits() % 30;
    std::vector<double> x(n), y(n);
    std::vector<std::int64_t> l(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::ldexp(static_cast<double>(s.bits() % 2001) - 1000.0, -6);
      y[i] = std::ldexp(static_cast<double>(s.bits() % 2001) - 1000.0, -6);
      l[i] = static_cast<std::int64_t>(s.bits() % 5);
    }
    const FinitePartition part(l);
    CHECK(condexp::operator_laws(x, y, part, 0.75, -2.5).all());
    CHECK(condexp::defining_identity(x, part).exact);
  }
}

TEST_CASE("weighted measure") {
  const std::vector<double> x{1.0, 3.0, 10.0};
  const std::vector<std::int64_t> l{0, 0, 1};
  const FinitePartition part(l, std::vector<double>{1.0, 3.0, 2.0});
  CHECK(part.weighted());
  CHECK(condexp::cond_expect(x, part).table[0] == doctest::Approx(2.5));
  CHECK(part.probability(0) == doctest::Approx(4.0 / 6.0));
  CHECK(condexp::defining_identity(x, part).exact);

  const FinitePartition empty(l, std::vector<double>{1.0, 1.0, 0.0});
  try {
    condexp::cond_expect(x, empty);
    FAIL("expected EmptyCell");
  } catch (const ProbaError& e) {
    CHECK(e.kind() == ErrorKind::EmptyCell);
  }
}

TEST_CASE("binned regression") {
  std::vector<double> x, y;
  Stream s(3, 0);
  for (int i = 0; i < 20000; ++i) {
    const double u = s.uniform();
    y.push_back(u);
    x.push_back(2.0 * u + 0.1 * s.normal());
  }
  const auto b = condexp::binned_regression(x, y, 0.0, 1.0, 10);
  CHECK(b.means.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) CHECK(b.means[i] == doctest::Approx(2.0 * b.centers[i]).epsilon(0.05).scale(0.05));
}
