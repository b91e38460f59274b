#include "probalab/special.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "probalab/error.hpp"
#include "probalab/quadrature.hpp"

namespace probalab::special {

double gamma_p(double a, double x) { return x <= 0.0 ? 0.0 : boost::math::gamma_p(a, x); }

double gamma_q(double a, double x) { return x <= 0.0 ? 1.0 : boost::math::gamma_q(a, x); }

double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double bessel_k(double order, double z) {
  require(z > 0.0, ErrorKind::DomainError, "bessel_k needs a positive argument");
  // Scale out exp(-z) (the integrand peaks at t = 1 with value exp(-z)) so
  // the absolute quadrature tolerance acts as a relative one.
  const auto f = [order, z](double t) {
    if (t <= 0.0) return 0.0;
    return 0.5 * std::exp((order - 1.0) * std::log(t) - 0.5 * z * (t + 1.0 / t) + z);
  };
  quad::Options opt;
  opt.abs_tol = 1e-10;
  opt.scale = std::max(1.0, 1.0 / z);
  // Split at the mode t = 1; [1, inf) mapped, (0, 1] finite.
  const double lower = quad::integrate(f, 0.0, 1.0, opt).value;
  const double upper = quad::integrate(f, 1.0, quad::kInf, opt).value;
  return (lower + upper) * std::exp(-z);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace probalab::special
