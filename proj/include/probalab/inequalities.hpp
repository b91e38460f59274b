#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "probalab/bounds.hpp"
#include "probalab/catalog.hpp"
#include "probalab/kernels.hpp"
#include "probalab/linalg.hpp"

namespace probalab::ineq {

using catalog::CatalogEntry;
using linalg::Matrix;
using RealFn = std::function<double(double)>;

// ---------------------------------------------------------------------------
// exact (law-based) and empirical-measure inequalities

/// P(X >= x) <= E X / x for X >= 0 (NegativeSupport otherwise), x > 0.
BoundReport markov(const CatalogEntry& law, double x);
BoundReport markov(std::span<const double> samples, double x);

/// P(|X - E X| > x) <= Var X / x^2, x > 0.
BoundReport chebyshev(const CatalogEntry& law, double x);
BoundReport chebyshev(std::span<const double> samples, double x);

struct BasicBounds {
  BoundReport lower;  // (E g(X) - g(a)) / ||g(X)||_inf <= P(X >= a)
  BoundReport upper;  // P(X >= a) <= E g(X) / g(a)
};

/// g nondecreasing and nonnegative. ZeroDenominator when g(a) = 0 or g(X) = 0 a.s.
BasicBounds basic_inequality(const CatalogEntry& law, const RealFn& g, double a);
BasicBounds basic_inequality(std::span<const double> samples, const RealFn& g, double a);

/// Hoelder, Cauchy-Schwarz, Minkowski and C_p on the empirical measure of
/// paired samples. ConjugateMismatch unless p, q > 1 and 1/p + 1/q = 1.
std::vector<BoundReport> holder_cs_minkowski_cp(std::span<const double> x, std::span<const double> y, double p,
                                                double q);

/// phi(E X) <= E phi(X). ConvexityViolation from a 100-midpoint spot check.
BoundReport jensen(std::span<const double> samples, const RealFn& phi, std::uint64_t seed = 1);
BoundReport jensen(const CatalogEntry& law, const RealFn& phi, std::uint64_t seed = 1);

/// Events as an N x n indicator matrix (row = outcome).
struct EventMatrix {
  std::size_t outcomes = 0;
  std::size_t events = 0;
  std::vector<std::uint8_t> bits;  // row-major
  bool at(std::size_t r, std::size_t j) const { return bits[r * events + j] != 0; }
};

struct InclusionExclusion {
  double exact;                 // P(union) on the empirical measure
  std::vector<double> partials;  // alpha_s = sum_{k <= s + 1} (-1)^(k-1) S_k
  bool bonferroni;              // even partials >= exact >= odd partials, exact integers
};

/// TooManyEvents beyond 20 events.
InclusionExclusion inclusion_exclusion(const EventMatrix& events);

/// e^{t(1-t)} <= 1 + t <= e^t for t >= 0.
std::pair<BoundReport, BoundReport> elementary_exp_inequality(double t);

/// exp(t^2 s^2 (1 - tc) / 2) < E e^{tX} < exp(t^2 s^2 (1 + tc / 2) / 2) for
/// a centered law bounded by c, t > 0, tc <= 1.
std::pair<BoundReport, BoundReport> mgf_sandwich(const CatalogEntry& law, double c, double t);

// ---------------------------------------------------------------------------
// Monte Carlo maximal inequalities over an N x n increment matrix

/// Row r holds X_1..X_n of path r. draw(stream, k) yields X_k. Path blocks
/// are seeded by index, so the result is identical serial or parallel.
Matrix simulate_increments(const std::function<double(Stream&, std::size_t)>& draw, std::size_t n,
                           std::size_t paths, std::uint64_t seed, kernels::Exec exec = kernels::Exec::Parallel);

struct MaximalBounds {
  BoundReport upper;
  std::optional<BoundReport> lower;
};

/// 1 - (eps + c)^2 / s_n^2 <= P(max |S_k| >= eps) <= s_n^2 / eps^2, with
/// s_n^2 the exact sum of variances. The lower side needs |X_k| <= c
/// (UnboundedForLowerBound if c is missing or exceeded).
MaximalBounds kolmogorov_maximal(const Matrix& increments, double eps, double sn2, std::optional<double> c);

/// P(S_n > eps s_n) against exp(-eps^2 (1 - eps c / 2) / 2) for c eps <= 1 and
/// exp(-eps / (4 c)) otherwise, with c = max |X_k| / s_n.
BoundReport exponential_bound(const Matrix& increments, double eps, double sn, double max_abs);

/// P(max S_k >= eps) <= 2 P(S_n >= eps - sqrt(2 Var S_n)).
BoundReport billingsley_maximal(const Matrix& increments, double eps, double var_sn);

/// P(max |S_k| >= 3 alpha) <= 3 max_k P(|S_k| >= alpha).
BoundReport etemadi_maximal(const Matrix& increments, double alpha);

/// Nonnegative submartingale special case: for partial sums with E X_k >= 0,
/// S_k^+ is a nonnegative submartingale and P(max S_k >= eps) <= E S_n^+ / eps.
BoundReport submartingale_maximal(const Matrix& increments, double eps);

// ---------------------------------------------------------------------------
// randomized property suite

struct SuiteSummary {
  std::string inequality;
  std::size_t instances = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;  // most negative (slack + tolerance) seen
};

struct SuiteOptions {
  std::size_t instances = 1000;
  std::size_t paths = 2000;  // MC paths per maximal-inequality instance
  std::uint64_t seed = 1;
};

/// Every inequality above on `instances` random instances each.
std::vector<SuiteSummary> property_suite(const SuiteOptions& opt, std::vector<BoundReport>* all = nullptr);

}  // namespace probalab::ineq
