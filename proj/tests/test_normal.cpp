#include <doctest.h>

#include <cmath>
#include <numbers>

#include "probalab/normal_approx.hpp"
#include "probalab/special.hpp"

using namespace probalab;
using normal::inverse_loi_normal;
using normal::proba_normale;

TEST_CASE("coefficients are the listed literals") {
  // typed in again from the listing, never copied from the header
  const double cdf[] = {0.31938153, -0.356563782, 1.781477937, -1.821255978, 1.330274429};
  const double q[] = {2.515517, 0.802853, 0.010328, 1.432788, 0.189269, 0.001308};
  for (std::size_t i = 0; i < 5; ++i) CHECK(normal::kCdfCoefficients[i] == cdf[i]);
  for (std::size_t i = 0; i < 6; ++i) CHECK(normal::kQuantileCoefficients[i] == q[i]);
  CHECK(normal::kCdfW == 0.2316419);
  CHECK(normal::kCdfKernel == 0.39894228);
}

TEST_CASE("rational cdf") {
  CHECK(std::abs(proba_normale(0.0) - 0.5) < 1e-7);
  CHECK(std::abs(proba_normale(1.96) - 0.9750021) < 1e-6);
  CHECK(std::abs(proba_normale(-1.96) - (1.0 - proba_normale(1.96))) < 1e-7);
  double prev = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double p = proba_normale(-8.0 + 16.0 * i / 10000.0);
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("rational quantile") {
  CHECK(std::abs(inverse_loi_normal(0.5)) < 5e-4);
  CHECK(std::abs(inverse_loi_normal(0.975) - 1.959964) < 5e-4);
  CHECK(inverse_loi_normal(0.0) == -4.0);
  CHECK(inverse_loi_normal(-1.0) == -4.0);
  CHECK(inverse_loi_normal(1.0) == 4.0);
  CHECK(inverse_loi_normal(2.0) == 4.0);
  for (double z = -3.0; z <= 3.0; z += 0.05) CHECK(std::abs(inverse_loi_normal(proba_normale(z)) - z) < 2e-3);
}

TEST_CASE("oracle") {
  CHECK(normal::phi_oracle(0.0) == 0.5);
  CHECK(std::abs(normal::phi_oracle(8.0) - 1.0) < 1e-14);
  for (double z : {-5.0, -1.3, 0.2, 2.7}) CHECK(normal::phi_oracle(z) == doctest::Approx(special::normal_cdf(z)).epsilon(1e-12));
  CHECK(normal::quantile_oracle(0.8413447) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("measured worst errors") {
  const auto c = normal::scan_cdf_error(-8.0, 8.0, 4001);
  CHECK(c.max_error < 1e-7);
  CHECK(c.max_error > 1e-8);
  const auto q = normal::scan_quantile_error(0.001, 0.999, 1999);
  CHECK(q.max_error < 5e-4);
  CHECK(q.max_error > 1e-4);
}
