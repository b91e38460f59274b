#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probalab/catalog.hpp"
#include "probalab/kernels.hpp"

namespace probalab::limits {

using catalog::CatalogEntry;

/// Independent X_1, X_2, ... given by their laws. iid specs evaluate law(1)
/// once and reuse it.
struct TriangularSpec {
  std::string name;
  std::function<CatalogEntry(std::size_t)> law;
  bool iid = false;

  static TriangularSpec iid_of(const CatalogEntry& entry);
  /// X_k = weights(k) * base.
  static TriangularSpec weighted(const CatalogEntry& base, std::function<double(std::size_t)> weights,
                                 std::string name);
};

/// Laws X_1..X_n (a single entry for iid specs).
class MaterializedSpec {
 public:
  MaterializedSpec(const TriangularSpec& spec, std::size_t n);
  const CatalogEntry& at(std::size_t k) const { return iid_ ? laws_.front() : laws_[k - 1]; }
  std::size_t size() const { return n_; }
  bool iid() const { return iid_; }

  double mean_sum() const;      // E S_n
  double variance_sum() const;  // s_n^2

 private:
  std::vector<CatalogEntry> laws_;
  std::size_t n_;
  bool iid_;
};

struct LimitReport {
  std::string experiment;
  std::vector<std::pair<double, double>> trajectory;  // (n, statistic)
  double predicted = 0.0;
  std::map<std::string, double> criteria;
  bool passed = false;
  std::uint64_t seed = 0;
};

enum class Verdict { Converges, Diverges, Inconclusive };
std::string to_string(Verdict v);

struct SeriesSummary {
  double partial;      // sum_{k <= n} a_k
  double last_block;   // sum over (n/2, n]
  double block_ratio;  // last block / previous block
  double tail_estimate;
  Verdict verdict;
};

/// Dyadic-block test on a nonnegative series: ratio <= 0.75 converges,
/// ratio >= 0.95 diverges, in between inconclusive; all-zero blocks converge.
SeriesSummary series_verdict(const std::function<double(std::size_t)>& term, std::size_t n);

/// Fraction of trials with |S_n / n - mu| > eps at each n, eps in {0.1, 0.05}.
/// UndefinedMoment if the law has no mean.
LimitReport wlln_experiment(const CatalogEntry& law, const std::vector<std::size_t>& ns, std::size_t trials,
                            std::uint64_t seed);

struct SllnResult {
  SeriesSummary criterion;  // sum Var(X_k) / b_k^2
  LimitReport path;         // (S_n - E S_n) / b_n at dyadic checkpoints
  double tail_max;          // max |.| over n in [n/2, n]
};

/// Kolmogorov criterion plus a single path. passed when the criterion
/// converges and tail_max < tol.
SllnResult slln_kolmogorov_criterion(const TriangularSpec& spec, const std::function<double(std::size_t)>& b,
                                     std::size_t n, std::uint64_t seed, double tol = 0.05);

struct ThreeSeriesReport {
  SeriesSummary prob;      // sum P(|X_k| >= c)
  SeriesSummary variance;  // sum Var X_k^(c), X^(c) = X 1(|X| <= c)
  SeriesSummary mean;      // sum |E X_k^(c)|
  Verdict verdict;
  double flatness;  // max over paths of |S_2m - S_m|
  std::size_t m;
};

ThreeSeriesReport three_series_check(const TriangularSpec& spec, double c, std::size_t n = 10000,
                                     std::size_t flat_m = 1000, std::size_t paths = 8, std::uint64_t seed = 1);

/// E[(X - center)^2 1(|X - center| > r)].
double truncated_second_moment(const CatalogEntry& law, double center, double r);
/// E|X - center|^p.
double central_abs_moment(const CatalogEntry& law, double center, double p);

/// g_n(eps) = s_n^{-2} sum_k E[(X_k - mu_k)^2 1(|X_k - mu_k| > eps s_n)].
double lindeberg_g(const TriangularSpec& spec, std::size_t n, double eps);
/// sum_k E|X_k - mu_k|^{2+delta} / s_n^{2+delta}.
double lyapounov_ratio(const TriangularSpec& spec, std::size_t n, double delta);
/// max_k sigma_k^2 / s_n^2.
double feller_max(const TriangularSpec& spec, std::size_t n);

/// 2,001 grid points x_i = Phi^{-1}(i / 2002) with reference values Phi(x_i).
struct NormalGrid {
  std::vector<double> x;
  std::vector<double> phi;
};
const NormalGrid& normal_grid();

/// sup over the grid of |F_n(x) - Phi(x)| for standardized samples.
double sup_gap(std::vector<double> standardized);

struct BerryEsseen {
  double gap;
  double bound;  // 36 beta_n^3 / s_n^3
  double slack;  // 1.5 / sqrt(trials)
  bool holds;    // gap <= bound + slack
  double beta3;
  double sn;
};

/// Empirical sup gap of (S_n - E S_n) / s_n over `trials` sums. iid
/// two-point laws are sampled exactly through a binomial table.
BerryEsseen berry_esseen_gap(const TriangularSpec& spec, std::size_t n, std::size_t trials, std::uint64_t seed,
                             kernels::Exec exec = kernels::Exec::Parallel);

struct LilResult {
  std::vector<double> running_max;  // one per seed
  std::vector<std::pair<double, double>> trajectory;  // first seed, dyadic checkpoints
  bool in_bracket;                   // all in [0.5, 1.3]
};

/// Running max over n in [1000, n_max] (or [16, n_max] when n_max < 1000)
/// of S_n / sqrt(2 s_n^2 log log n) for scale * Rademacher steps.
/// DomainError when n_max < e^e.
LilResult lil_trajectory(std::size_t n_max, std::uint64_t seed, std::size_t seeds = 5, double scale = 1.0,
                         kernels::Exec exec = kernels::Exec::Parallel);

/// m_n = (1/n) sum_{k <= n} x_k
std::vector<double> cesaro(const std::vector<double>& x);
/// (1/b_n) sum_{k <= n} b_k x_k; b positive nondecreasing (DomainError).
std::vector<double> kronecker_weighted(const std::vector<double>& x, const std::vector<double>& b);

struct ToeplitzResult {
  std::vector<double> means;  // t_n = sum_k a(n, k) x_k
  double max_row_abs_sum;
};
/// a(n, k) for 1 <= k <= n.
ToeplitzResult toeplitz_mean(const std::vector<double>& x, const std::function<double(std::size_t, std::size_t)>& a);

}  // namespace probalab::limits
