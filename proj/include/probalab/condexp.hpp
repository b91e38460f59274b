#pragma once

// Conditional expectation on finite partitions of an empirical (or weighted
// finite) measure. Tables are doubles; the verifiers redo the arithmetic in
// exact rationals, so "exact" below means exact.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "probalab/bounds.hpp"

namespace probalab::condexp {

/// Cells of a finite sigma-algebra over sample indices 0..n-1. Cell ids are
/// assigned in order of first appearance. Optional per-sample weights give
/// the measure (default: uniform).
class FinitePartition {
 public:
  FinitePartition(std::span<const std::int64_t> labels, std::optional<std::vector<double>> weights = std::nullopt);
  static FinitePartition single(std::size_t n);
  static FinitePartition singletons(std::size_t n);

  std::size_t size() const { return cell_.size(); }
  std::size_t cells() const { return members_.size(); }
  std::size_t cell_of(std::size_t i) const { return cell_[i]; }
  const std::vector<std::size_t>& members(std::size_t c) const { return members_[c]; }
  bool weighted() const { return weights_.has_value(); }
  double weight(std::size_t i) const { return weights_ ? (*weights_)[i] : 1.0; }
  /// P(cell c).
  double probability(std::size_t c) const;
  /// Every cell of *this lies inside one cell of coarse.
  bool refines(const FinitePartition& coarse) const;

 private:
  std::vector<std::size_t> cell_;
  std::vector<std::vector<std::size_t>> members_;
  std::optional<std::vector<double>> weights_;
  double total_weight_ = 0.0;
};

/// The B-measurable version: one value per cell.
struct CondExpectation {
  std::vector<double> table;
  /// Value at sample i (table[cell_of(i)]).
  std::vector<double> expand(const FinitePartition& part) const;
};

/// Cell means. EmptyCell if any cell has zero weight.
CondExpectation cond_expect(std::span<const double> x, const FinitePartition& part);

struct IdentityReport {
  bool exact;            // identity holds in exact rational arithmetic
  double max_float_gap;  // largest |double table - exact value|
};

/// int_C X dP == int_C E(X|B) dP on every cell.
IdentityReport defining_identity(std::span<const double> x, const FinitePartition& part);

struct TowerReport {
  bool coarse_of_fine;  // E(E(X|fine)|coarse) == E(X|coarse)
  bool fine_of_coarse;  // E(E(X|coarse)|fine) == E(X|coarse)
  bool exact() const { return coarse_of_fine && fine_of_coarse; }
};

/// NotARefinement unless fine refines coarse.
TowerReport tower_check(std::span<const double> x, const FinitePartition& coarse, const FinitePartition& fine);

/// phi(E(X|B)) <= E(phi(X)|B) per cell; the worst cell is returned.
/// ConvexityViolation if phi fails a midpoint spot-check.
BoundReport conditional_jensen(std::span<const double> x, const FinitePartition& part,
                               const std::function<double(double)>& phi, std::uint64_t seed = 1);

/// |E(X|B)| <= E(|X| |B) on every cell, exact.
bool contraction_check(std::span<const double> x, const FinitePartition& part);

struct ProjectionReport {
  double distance;        // mean squared distance of x to its projection
  double best_candidate;  // smallest distance among the perturbed candidates
  bool optimal;           // exact: no candidate beats the cell means
};

/// E(X|B) minimizes mean squared distance among B-measurable tables; checked
/// against `candidates` random perturbations of the cell means.
ProjectionReport l2_projection_check(std::span<const double> x, const FinitePartition& part,
                                     std::size_t candidates = 100, std::uint64_t seed = 1);

struct RegressionReport {
  std::vector<std::int64_t> labels;  // y_j in order of first appearance
  std::vector<double> cell_means;    // E(X | Y = y_j)
  std::vector<double> frequencies;   // P(Y = y_j)
  double recombined;                 // sum_j E(X | Y = y_j) P(Y = y_j)
  double overall_mean;
  bool exact;
};

RegressionReport regression_total_expectation(std::span<const double> x, std::span<const std::int64_t> y);

/// Operator laws on one instance, all in exact arithmetic.
struct LawsReport {
  bool linearity;
  bool positivity;
  bool monotonicity;
  bool idempotence;
  bool contraction;
  bool all() const { return linearity && positivity && monotonicity && idempotence && contraction; }
};

/// x, y paired samples; alpha, beta coefficients for linearity.
LawsReport operator_laws(std::span<const double> x, std::span<const double> y, const FinitePartition& part,
                         double alpha, double beta);

/// E(X | Y in bin) over `bins` equal-width bins of [lo, hi]; empty bins are
/// skipped (NaN in the output) since this is an approximation study only.
struct BinnedRegression {
  std::vector<double> centers;
  std::vector<double> means;
  std::vector<std::size_t> counts;
};
BinnedRegression binned_regression(std::span<const double> x, std::span<const double> y, double lo, double hi,
                                   std::size_t bins);

}  // namespace probalab::condexp
