#pragma once

namespace probalab::special {

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);
/// Regularized incomplete beta I_x(a, b).
double ibeta(double a, double b, double x);
double log_binomial(double n, double k);

/// Modified Bessel function of the second kind, by adaptive quadrature of
/// K_a(z) = (1/2) * int_0^inf t^(a-1) exp(-z (t + 1/t) / 2) dt; relative
/// tolerance 1e-8.
double bessel_k(double order, double z);

/// Standard normal cdf through erfc (closed form, for catalog use).
double normal_cdf(double z);

inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace probalab::special
