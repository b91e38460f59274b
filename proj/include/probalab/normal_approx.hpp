#pragma once

#include <array>
#include <cstddef>

namespace probalab::normal {

/// Literal constants of the two rational approximations, in listing order.
inline constexpr std::array<double, 5> kCdfCoefficients = {0.31938153, -0.356563782, 1.781477937, -1.821255978,
                                                           1.330274429};
inline constexpr double kCdfW = 0.2316419;
inline constexpr double kCdfKernel = 0.39894228;
inline constexpr std::array<double, 6> kQuantileCoefficients = {2.515517, 0.802853, 0.010328,
                                                                1.432788, 0.189269, 0.001308};

/// Rational approximation of the standard normal cdf.
double proba_normale(double z);

/// Rational approximation of the standard normal quantile. Clamps:
/// u <= 0 gives -4, u >= 1 gives 4.
double inverse_loi_normal(double u);

/// Reference cdf: 1/2 +- adaptive quadrature of the density over [0, |z|]
/// at tolerance 1e-12.
double phi_oracle(double z);

/// Bisection inverse of phi_oracle to 1e-12.
double quantile_oracle(double u);

struct ErrorScan {
  double max_error;
  double argmax;
};

/// max |proba_normale - phi_oracle| over `points` equispaced nodes of [lo, hi].
ErrorScan scan_cdf_error(double lo, double hi, std::size_t points);
/// max |inverse_loi_normal - quantile_oracle| over equispaced levels of [lo, hi].
ErrorScan scan_quantile_error(double lo, double hi, std::size_t points);

}  // namespace probalab::normal
