#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "probalab/kernels.hpp"
#include "probalab/linalg.hpp"

namespace probalab::process {

using linalg::Matrix;
using Cdf = std::function<double(double)>;
using JointCdf = std::function<double(double, double)>;

/// inf{x : G(x) >= u} for 0 < u < 1 by bisection to 1e-12. The bracket
/// [lo, hi] is widened by doubling until G(lo) < u <= G(hi).
double gen_inverse(const Cdf& g, double u, double lo = -1.0, double hi = 1.0);

struct InverseCheck {
  double worst_a;  // min over probes of G(G^-1(u)) - u, should be >= 0
  double worst_b;  // max over probes of G^-1(G(x)) - x, should be <= 0
  bool holds;
};

/// G(G^-1(u)) >= u on a dyadic u grid and G^-1(G(x)) <= x at the x probes.
InverseCheck inverse_lemma_check(const Cdf& g, std::span<const double> x_probes, int dyadic_level = 6);

/// C(u, v) = F(F1^-1(u + 0), F2^-1(v + 0)); the right limit is taken with a
/// 1e-12 nudge. u, v outside (0, 1) map to the infinite endpoints.
JointCdf sklar_copula(JointCdf joint, Cdf f1, Cdf f2);

struct CopulaCheck {
  double margin_error;          // max |C(s, 1) - s|, |C(1, s) - s| over a uniform s grid
  double reconstruction_error;  // max |F(x1, x2) - C(F1(x1), F2(x2))| over the x grid
};

CopulaCheck copula_check(const JointCdf& copula, const JointCdf& joint, const Cdf& f1, const Cdf& f2,
                         std::span<const double> x_grid, int s_points = 21);

/// Finite-dimensional Gaussian laws indexed by time tuples. Tuples are stored
/// canonically (sorted) together with the permutation that sorts them.
class FiniteDimFamily {
 public:
  struct Entry {
    std::vector<double> times;  // sorted, strictly increasing
    std::vector<double> mean;   // in sorted order
    Matrix cov;                 // in sorted order
    std::vector<std::size_t> order;  // order[i] = position in the caller's tuple of times[i]
  };

  /// DomainError on repeated times or mismatched sizes.
  void add(std::span<const double> times, std::vector<double> mean, const Matrix& cov);
  const std::vector<Entry>& entries() const { return entries_; }

  /// Entries for each tuple from mean_fn / cov_fn.
  static FiniteDimFamily from_functions(const std::function<double(double)>& mean_fn,
                                        const std::function<double(double, double)>& cov_fn,
                                        const std::vector<std::vector<double>>& tuples);

 private:
  std::vector<Entry> entries_;
};

struct CoherenceReport {
  std::size_t pairs_checked = 0;  // (U, S) pairs with U's times a subset of S's
  double max_gap = 0.0;
};

/// Marginalization and permutation consistency within 1e-12 for every pair
/// of entries whose tuples are nested. IncoherentFamily names the first bad pair.
CoherenceReport coherence_check(const FiniteDimFamily& family);

/// Paths on a time grid, one row per path.
struct PathSample {
  std::vector<double> times;
  Matrix values;
  std::string generator;
};

struct PoissonPaths {
  PathSample paths;
  double mean_inter_arrival;  // over every gap drawn, including those past the horizon
  std::size_t gaps;
};

/// N_t = #{j : Z_j <= t} with Exp(theta) gaps, on the grid (horizon =
/// grid.back()). Gaps are drawn in blocks of ceil(2 theta horizon); a path
/// needing more than max_arrivals raises SaturationError.
PoissonPaths poisson_process(double theta, std::span<const double> grid, std::size_t n_paths, std::uint64_t seed,
                             kernels::Exec exec = kernels::Exec::Parallel, std::size_t max_arrivals = 10'000'000);

/// Total variation between the empirical law of column `col` and Poisson(mean).
double poisson_total_variation(const PathSample& s, std::size_t col, double mean);

/// Centered Gaussian increments with variances t_i - t_{i-1} (t_0 = 0),
/// cumulated. Grid must be positive and strictly increasing.
PathSample brownian_motion(std::span<const double> grid, std::size_t n_paths, std::uint64_t seed,
                           kernels::Exec exec = kernels::Exec::Parallel);

/// Samples N(m(t_i), Gamma(t_i, t_j)) on the grid through the eigen route.
/// NotPositiveSemidefinite if the Gram matrix is not.
PathSample gaussian_process(const std::function<double(double)>& mean_fn,
                            const std::function<double(double, double)>& cov_fn, std::span<const double> grid,
                            std::size_t n_paths, std::uint64_t seed, kernels::Exec exec = kernels::Exec::Parallel);

std::vector<double> column(const Matrix& m, std::size_t j);

}  // namespace probalab::process
