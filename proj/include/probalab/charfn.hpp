#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace probalab::cf {

using Complex = std::complex<double>;

/// A characteristic function u -> E exp(iuX) with metadata for inversion.
struct CharFn {
  std::function<Complex(double)> eval;
  std::string closed_form_tag;
  /// integral of |phi| over the real line is known to be finite.
  bool integrable_modulus = false;

  Complex operator()(double u) const { return eval(u); }
};

/// Product of the cfs: the cf of a sum of independent variables.
CharFn cf_of_sum(std::span<const CharFn> phis);

/// cf of scale * X + shift: u -> exp(i shift u) phi(scale u).
CharFn cf_affine(const CharFn& phi, double scale, double shift);

/// Oscillatory panel width used for the inversion integrals.
double inversion_panel_width(double a, double b);

/// (1 / 2pi) int_{-U}^{U} (exp(-iau) - exp(-ibu)) / (iu) phi(u) du. Tends to
/// F(b-) - F(a) + (jump at a + jump at b) / 2 as U grows.
double invert_cdf_difference(const CharFn& phi, double a, double b, double cutoff);

struct CutoffSearch {
  double value;
  double cutoff;
  bool converged;
};

/// Doubles U from `start` until successive inversions differ by < tol
/// (cap 2^16).
CutoffSearch invert_cdf_difference_adaptive(const CharFn& phi, double a, double b, double start = 16.0,
                                            double tol = 1e-6);

struct DensityValue {
  double value;
  double imag;  // diagnostic; near zero for real laws
};

/// f(x) = (1 / 2pi) int_{-U}^{U} exp(-ixu) phi(u) du. Requires integrable_modulus.
DensityValue invert_density(const CharFn& phi, double x, double cutoff);

/// Numerical moments from the cf at 0 by central differences: order 1 gives
/// (-i) phi'(0), order 2 gives -phi''(0).
double moment_from_cf(const CharFn& phi, int order, double step = 1e-3);

/// A density with compact numerical support [lo, hi]; discontinuities are
/// only allowed at lo and hi.
struct Density {
  std::function<double(double)> pdf;
  double lo;
  double hi;
};

struct GridSpec {
  double lo;
  double hi;
  std::size_t points;  // odd, so the grid supports composite Simpson
};

/// Tabulated density on an equispaced grid.
class GriddedDensity {
 public:
  GriddedDensity(double lo, double hi, std::vector<double> values);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double step() const { return step_; }
  const std::vector<double>& values() const { return values_; }
  double node(std::size_t i) const { return lo_ + step_ * static_cast<double>(i); }
  /// Linear interpolation, 0 outside [lo, hi].
  double operator()(double x) const;
  /// Composite Simpson over the grid.
  double integral() const;

 private:
  double lo_;
  double hi_;
  double step_;
  std::vector<double> values_;
};

/// (f * g)(z) = int f(z - x) g(x) dx tabulated on the grid. Throws
/// GridTooCoarse if the result fails to integrate to 1 within 1e-6.
GriddedDensity convolve_densities(const Density& f, const Density& g, const GridSpec& grid);

/// Empirical joint cf (1/N) sum exp(i(u X_k + v Y_k)).
Complex empirical_cf(std::span<const double> x, std::span<const double> y, double u, double v);

/// max over the (u, v) grid of
/// |joint empirical cf - product of marginal empirical cfs|. Needs N >= 1e4.
double independence_factorization_test(std::span<const double> x, std::span<const double> y,
                                       std::span<const std::pair<double, double>> grid);

/// Default probe grid: u, v in {-2, -1, -0.5, 0.5, 1, 2}.
std::vector<std::pair<double, double>> default_probe_grid();

}  // namespace probalab::cf
