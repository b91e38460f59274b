#include "probalab/normal_approx.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "probalab/quadrature.hpp"

namespace probalab::normal {

double proba_normale(double z) {
  const double a1 = kCdfCoefficients[0];
  const double a2 = kCdfCoefficients[1];
  const double a3 = kCdfCoefficients[2];
  const double A4 = kCdfCoefficients[3];
  const double A5 = kCdfCoefficients[4];

  double W1 = std::abs(z);
  const double w = 1 / (1 + kCdfW * W1);
  W1 = kCdfKernel * std::exp(-0.5 * W1 * W1);
  double P0 = (a3 + w * (A4 + A5 * w));
  P0 = w * (a1 + w * (a2 + w * P0));

  P0 = W1 * P0;

  if (z <= 0) P0 = 1 - P0;

  return 1 - P0;
}

double inverse_loi_normal(double z) {
  const double a1 = kQuantileCoefficients[0];
  const double a2 = kQuantileCoefficients[1];
  const double a3 = kQuantileCoefficients[2];
  const double A4 = kQuantileCoefficients[3];
  const double A5 = kQuantileCoefficients[4];
  const double A6 = kQuantileCoefficients[5];

  if (z <= 0) return -4;
  if (z >= 1) return 4;

  const double Q = 0.5 - std::abs(z - 0.5);
  const double w = std::sqrt(-2 * std::log(Q));
  const double W1 = a1 + w * (a2 + a3 * w);
  const double W2 = 1 + w * (A4 + w * (A5 + A6 * w));
  // VB Sgn: -1, 0 or 1.
  const double sgn = (z > 0.5) ? 1.0 : (z < 0.5 ? -1.0 : 0.0);
  return (w - W1 / W2) * sgn;
}

double phi_oracle(double z) {
  if (z == 0.0) return 0.5;
  const double inv_root = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  quad::Options opt;
  opt.abs_tol = 1e-12;
  const auto pdf = [inv_root](double t) { return inv_root * std::exp(-0.5 * t * t); };
  const double x = std::min(std::abs(z), 40.0);
  const double half = quad::integrate(pdf, 0.0, x, opt).value;
  return z > 0.0 ? 0.5 + half : 0.5 - half;
}

double quantile_oracle(double u) {
  if (u <= 0.0) return -std::numeric_limits<double>::infinity();
  if (u >= 1.0) return std::numeric_limits<double>::infinity();
  // Bracket around the rational approximation, widened until it is valid.
  const double guess = inverse_loi_normal(u);
  double width = 1e-3;
  double lo = guess - width;
  double hi = guess + width;
  while (phi_oracle(lo) >= u || phi_oracle(hi) < u) {
    width *= 4.0;
    lo = guess - width;
    hi = guess + width;
    if (width > 40.0) break;
  }
  return quad::bisect_first_true([u](double z) { return phi_oracle(z) >= u; }, lo, hi, 1e-12);
}

ErrorScan scan_cdf_error(double lo, double hi, std::size_t points) {
  ErrorScan out{0.0, lo};
  for (std::size_t i = 0; i < points; ++i) {
    const double z = points > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1) : lo;
    const double e = std::abs(proba_normale(z) - phi_oracle(z));
    if (e > out.max_error) out = {e, z};
  }
  return out;
}

ErrorScan scan_quantile_error(double lo, double hi, std::size_t points) {
  ErrorScan out{0.0, lo};
  for (std::size_t i = 0; i < points; ++i) {
    const double u = points > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1) : lo;
    const double e = std::abs(inverse_loi_normal(u) - quantile_oracle(u));
    if (e > out.max_error) out = {e, u};
  }
  return out;
}

}  // namespace probalab::normal
