#include "probalab/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "probalab/error.hpp"
#include "probalab/kernels.hpp"
#include "probalab/quadrature.hpp"

namespace probalab::cf {

using std::numbers::pi;

CharFn cf_of_sum(std::span<const CharFn> phis) {
  require(!phis.empty(), ErrorKind::DomainError, "cf_of_sum needs at least one cf");
  if (phis.size() == 1) return phis.front();
  std::vector<CharFn> parts(phis.begin(), phis.end());
  const bool integrable = std::any_of(parts.begin(), parts.end(), [](const CharFn& p) { return p.integrable_modulus; });
  std::string tag = "sum(";
  for (std::size_t i = 0; i < parts.size(); ++i) tag += (i ? "," : "") + parts[i].closed_form_tag;
  tag += ")";
  return {[parts = std::move(parts)](double u) {
            Complex prod{1.0, 0.0};
            for (const CharFn& p : parts) prod *= p(u);
            return prod;
          },
          tag, integrable};
}

CharFn cf_affine(const CharFn& phi, double scale, double shift) {
  if (scale == 1.0 && shift == 0.0) return phi;
  return {[phi, scale, shift](double u) { return std::exp(Complex{0.0, shift * u}) * phi(scale * u); },
          "affine(" + phi.closed_form_tag + ")", phi.integrable_modulus && scale != 0.0};
}

double inversion_panel_width(double a, double b) {
  return std::min(0.1, pi / (10.0 * std::abs(a) + std::abs(b) + 1.0));
}

namespace {

// (exp(-iau) - exp(-ibu)) / (iu), with the removable singularity at 0.
Complex difference_kernel(double a, double b, double u) {
  if (std::abs(u) < 1e-8) return {b - a, 0.0};
  return (std::exp(Complex{0.0, -a * u}) - std::exp(Complex{0.0, -b * u})) / Complex{0.0, u};
}

}  // namespace

double invert_cdf_difference(const CharFn& phi, double a, double b, double cutoff) {
  require(cutoff > 0.0, ErrorKind::DomainError, "cutoff U must be positive");
  if (a == b) return 0.0;
  // The integrand at -u is the conjugate of the one at u.
  const double width = inversion_panel_width(a, b);
  const double integral = quad::simpson_panels(
      [&](double u) { return (difference_kernel(a, b, u) * phi(u)).real(); }, 0.0, cutoff, width);
  if (!std::isfinite(integral)) fail(ErrorKind::QuadratureFailure, "inversion integral is not finite");
  return integral / pi;
}

CutoffSearch invert_cdf_difference_adaptive(const CharFn& phi, double a, double b, double start, double tol) {
  constexpr double kCap = 65536.0;
  double cutoff = start;
  double prev = invert_cdf_difference(phi, a, b, cutoff);
  while (cutoff < kCap) {
    cutoff *= 2.0;
    const double next = invert_cdf_difference(phi, a, b, cutoff);
    if (std::abs(next - prev) < tol) return {next, cutoff, true};
    prev = next;
  }
  return {prev, cutoff, false};
}

DensityValue invert_density(const CharFn& phi, double x, double cutoff) {
  if (!phi.integrable_modulus)
    fail(ErrorKind::NotAbsolutelyContinuous, "cf '" + phi.closed_form_tag + "' is not known to be integrable");
  require(cutoff > 0.0, ErrorKind::DomainError, "cutoff U must be positive");
  const double width = inversion_panel_width(x, 0.0);
  const auto term = [&](double u) { return std::exp(Complex{0.0, -x * u}) * phi(u); };
  const double re = quad::simpson_panels([&](double u) { return term(u).real(); }, 0.0, cutoff, width) / pi;
  const double im = quad::simpson_panels([&](double u) { return term(u).imag() + term(-u).imag(); }, 0.0,
                                         cutoff, width) / (2.0 * pi);
  if (!std::isfinite(re)) fail(ErrorKind::QuadratureFailure, "density inversion integral is not finite");
  return {re, im};
}

double moment_from_cf(const CharFn& phi, int order, double step) {
  const Complex plus = phi(step);
  const Complex minus = phi(-step);
  switch (order) {
    case 1:
      return ((plus - minus) / (2.0 * step) * Complex{0.0, -1.0}).real();
    case 2:
      return -((plus - 2.0 * phi(0.0) + minus) / (step * step)).real();
    default:
      fail(ErrorKind::DomainError, "moment_from_cf supports orders 1 and 2");
  }
}

GriddedDensity::GriddedDensity(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), step_(0.0), values_(std::move(values)) {
  require(values_.size() >= 2 && hi > lo, ErrorKind::DomainError, "grid needs two nodes and lo < hi");
  step_ = (hi - lo) / static_cast<double>(values_.size() - 1);
}

double GriddedDensity::operator()(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  const double r = (x - lo_) / step_;
  const auto i = std::min(static_cast<std::size_t>(r), values_.size() - 2);
  const double w = r - static_cast<double>(i);
  return (1.0 - w) * values_[i] + w * values_[i + 1];
}

double GriddedDensity::integral() const {
  const std::size_t n = values_.size();
  double sum = 0.0;
  std::size_t last = n - 1;
  if (last % 2 == 1) {  // trapezoid on the final cell when the count is even
    sum += 0.5 * step_ * (values_[n - 2] + values_[n - 1]);
    --last;
  }
  for (std::size_t i = 0; i + 2 <= last; i += 2)
    sum += step_ / 3.0 * (values_[i] + 4.0 * values_[i + 1] + values_[i + 2]);
  return sum;
}

GriddedDensity convolve_densities(const Density& f, const Density& g, const GridSpec& grid) {
  require(grid.points >= 3 && grid.hi > grid.lo, ErrorKind::DomainError, "convolution grid is degenerate");
  std::vector<double> nodes(grid.points);
  const double h = (grid.hi - grid.lo) / static_cast<double>(grid.points - 1);
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = grid.lo + h * static_cast<double>(i);
  quad::Options opt;
  opt.abs_tol = 1e-11;
  const auto at = [&](double z) {
    const double lo = std::max(g.lo, z - f.hi);
    const double hi = std::min(g.hi, z - f.lo);
    if (!(lo < hi)) return 0.0;
    return quad::integrate([&](double x) { return f.pdf(z - x) * g.pdf(x); }, lo, hi, opt).value;
  };
  GriddedDensity out(grid.lo, grid.hi, kernels::tabulate(at, nodes));
  const double mass = out.integral();
  if (std::abs(mass - 1.0) > 1e-6)
    fail(ErrorKind::GridTooCoarse, "convolution integrates to " + std::to_string(mass));
  return out;
}

Complex empirical_cf(std::span<const double> x, std::span<const double> y, double u, double v) {
  const std::pair<double, double> point{u, v};
  return kernels::empirical_cf_grid(x, y, std::span(&point, 1), kernels::Exec::Serial).front();
}

double independence_factorization_test(std::span<const double> x, std::span<const double> y,
                                       std::span<const std::pair<double, double>> grid) {
  require(x.size() == y.size(), ErrorKind::ShapeMismatch, "paired samples must have equal length");
  require(x.size() >= 10000, ErrorKind::DomainError, "factorization test needs at least 1e4 pairs");
  std::vector<std::pair<double, double>> probes;
  probes.reserve(3 * grid.size());
  for (const auto& [u, v] : grid) {
    probes.emplace_back(u, v);
    probes.emplace_back(u, 0.0);
    probes.emplace_back(0.0, v);
  }
  const auto values = kernels::empirical_cf_grid(x, y, probes);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(values[3 * i] - values[3 * i + 1] * values[3 * i + 2]));
  return worst;
}

std::vector<std::pair<double, double>> default_probe_grid() {
  const double pts[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
  std::vector<std::pair<double, double>> grid;
  for (double u : pts)
    for (double v : pts) grid.emplace_back(u, v);
  return grid;
}

}  // namespace probalab::cf
