#pragma once

#include <functional>
#include <limits>
#include <span>

namespace probalab::quad {

using Integrand = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Options {
  double abs_tol = 1e-10;
  int max_depth = 60;
  // Hard cap on integrand evaluations, guards against pathological integrands.
  long max_evals = 20'000'000;
  // Infinite ranges: x = anchor + scale * t / (1 - t); a doubly infinite
  // range is split at center.
  double center = 0.0;
  double scale = 1.0;
  // Substitute x - a ~ w^2 at finite endpoints. Makes jumps and x^(-1/2)
  // type singularities at a support endpoint smooth in w.
  bool soften_endpoints = false;
};

struct Result {
  double value = 0.0;
  bool converged = true;
  long evals = 0;
};

/// Adaptive Simpson on [a, b]. Either endpoint may be infinite; infinite
/// ranges are mapped through x = t / (1 - t) (and its mirror image).
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// Integrate over [a, b] splitting at the given interior break points, which
/// lets step-shaped integrands (discrete tails) be integrated panel by panel.
Result integrate_piecewise(const Integrand& f, double a, double b, std::span<const double> breaks,
                           const Options& opt = {});

/// Composite Simpson with panels no wider than max_width. Non-adaptive:
/// used for oscillatory kernels where the phase per panel is controlled.
double simpson_panels(const Integrand& f, double a, double b, double max_width);

/// Smallest x in [lo, hi] (to tol) such that pred(x) holds, assuming pred is
/// monotone false -> true on the bracket.
double bisect_first_true(const std::function<bool(double)>& pred, double lo, double hi, double tol = 1e-12);

}  // namespace probalab::quad
