#include "probalab/condexp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "probalab/error.hpp"
#include "probalab/random.hpp"

namespace probalab::condexp {

using Rational = boost::multiprecision::cpp_rational;

FinitePartition::FinitePartition(std::span<const std::int64_t> labels, std::optional<std::vector<double>> weights)
    : cell_(labels.size()), weights_(std::move(weights)) {
  if (weights_) {
    require(weights_->size() == labels.size(), ErrorKind::ShapeMismatch, "one weight per sample");
    for (double w : *weights_) require(w >= 0.0, ErrorKind::DomainError, "weights must be nonnegative");
  }
  std::map<std::int64_t, std::size_t> ids;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], members_.size());
    if (inserted) members_.emplace_back();
    cell_[i] = it->second;
    members_[it->second].push_back(i);
    total_weight_ += weight(i);
  }
}

FinitePartition FinitePartition::single(std::size_t n) {
  const std::vector<std::int64_t> labels(n, 0);
  return FinitePartition(labels);
}

FinitePartition FinitePartition::singletons(std::size_t n) {
  std::vector<std::int64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i);
  return FinitePartition(labels);
}

double FinitePartition::probability(std::size_t c) const {
  double w = 0.0;
  for (std::size_t i : members_[c]) w += weight(i);
  return w / total_weight_;
}

bool FinitePartition::refines(const FinitePartition& coarse) const {
  if (coarse.size() != size()) return false;
  for (const auto& cell : members_)
    for (std::size_t i : cell)
      if (coarse.cell_of(i) != coarse.cell_of(cell.front())) return false;
  return true;
}

std::vector<double> CondExpectation::expand(const FinitePartition& part) const {
  std::vector<double> out(part.size());
  for (std::size_t i = 0; i < part.size(); ++i) out[i] = table[part.cell_of(i)];
  return out;
}

namespace {

void check_sizes(std::span<const double> x, const FinitePartition& part) {
  require(x.size() == part.size(), ErrorKind::ShapeMismatch, "one value per sample index");
  require(!x.empty(), ErrorKind::EmptyCell, "no samples");
}

// Exact cell means under the partition's measure.
std::vector<Rational> exact_means(std::span<const double> x, const FinitePartition& part) {
  std::vector<Rational> out(part.cells());
  for (std::size_t c = 0; c < part.cells(); ++c) {
    Rational num = 0;
    Rational den = 0;
    for (std::size_t i : part.members(c)) {
      const Rational w = part.weighted() ? Rational(part.weight(i)) : Rational(1);
      num += w * Rational(x[i]);
      den += w;
    }
    require(den != 0, ErrorKind::EmptyCell, "cell with zero measure");
    out[c] = num / den;
  }
  return out;
}

std::vector<Rational> exact_expand(const std::vector<Rational>& table, const FinitePartition& part) {
  std::vector<Rational> out(part.size());
  for (std::size_t i = 0; i < part.size(); ++i) out[i] = table[part.cell_of(i)];
  return out;
}

// Exact cell means of already-rational values.
std::vector<Rational> exact_means(const std::vector<Rational>& x, const FinitePartition& part) {
  std::vector<Rational> out(part.cells());
  for (std::size_t c = 0; c < part.cells(); ++c) {
    Rational num = 0;
    Rational den = 0;
    for (std::size_t i : part.members(c)) {
      const Rational w = part.weighted() ? Rational(part.weight(i)) : Rational(1);
      num += w * x[i];
      den += w;
    }
    require(den != 0, ErrorKind::EmptyCell, "cell with zero measure");
    out[c] = num / den;
  }
  return out;
}

std::vector<Rational> to_rational(std::span<const double> x) {
  std::vector<Rational> out;
  out.reserve(x.size());
  for (double v : x) out.emplace_back(v);
  return out;
}

void check_convex(const std::function<double(double)>& phi, double lo, double hi, std::uint64_t seed) {
  if (!(hi > lo)) return;
  Stream s(seed, 0xc0);
  for (int k = 0; k < 100; ++k) {
    const double a = lo + (hi - lo) * s.uniform();
    const double b = lo + (hi - lo) * s.uniform();
    const double mid = phi(0.5 * (a + b));
    const double chord = 0.5 * (phi(a) + phi(b));
    if (mid > chord + rounding_allowance(mid, chord))
      fail(ErrorKind::ConvexityViolation, "phi fails the midpoint convexity check");
  }
}

}  // namespace

CondExpectation cond_expect(std::span<const double> x, const FinitePartition& part) {
  check_sizes(x, part);
  CondExpectation out{std::vector<double>(part.cells())};
  for (std::size_t c = 0; c < part.cells(); ++c) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i : part.members(c)) {
      num += part.weight(i) * x[i];
      den += part.weight(i);
    }
    require(den > 0.0, ErrorKind::EmptyCell, "cell with zero measure");
    out.table[c] = num / den;
  }
  return out;
}

IdentityReport defining_identity(std::span<const double> x, const FinitePartition& part) {
  const CondExpectation ce = cond_expect(x, part);
  const std::vector<Rational> z = exact_means(x, part);
  bool exact = true;
  double gap = 0.0;
  for (std::size_t c = 0; c < part.cells(); ++c) {
    Rational lhs = 0;
    Rational rhs = 0;
    for (std::size_t i : part.members(c)) {
      const Rational w = part.weighted() ? Rational(part.weight(i)) : Rational(1);
      lhs += w * Rational(x[i]);
      rhs += w * z[c];
    }
    exact = exact && lhs == rhs;
    gap = std::max(gap, std::abs(ce.table[c] - z[c].convert_to<double>()));
  }
  return {exact, gap};
}

TowerReport tower_check(std::span<const double> x, const FinitePartition& coarse, const FinitePartition& fine) {
  check_sizes(x, coarse);
  require(fine.refines(coarse), ErrorKind::NotARefinement, "fine partition does not refine coarse");
  const std::vector<Rational> direct = exact_means(x, coarse);
  const std::vector<Rational> through_fine = exact_means(exact_expand(exact_means(x, fine), fine), coarse);
  const std::vector<Rational> coarse_values = exact_expand(direct, coarse);
  const std::vector<Rational> back = exact_expand(exact_means(coarse_values, fine), fine);
  return {through_fine == direct, back == coarse_values};
}

BoundReport conditional_jensen(std::span<const double> x, const FinitePartition& part,
                               const std::function<double(double)>& phi, std::uint64_t seed) {
  check_sizes(x, part);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  check_convex(phi, *lo, *hi, seed);
  const CondExpectation ce = cond_expect(x, part);
  std::vector<double> px(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) px[i] = phi(x[i]);
  const CondExpectation cphi = cond_expect(px, part);
  BoundReport worst = make_bound("conditional_jensen", phi(ce.table[0]), cphi.table[0]);
  for (std::size_t c = 1; c < part.cells(); ++c) {
    BoundReport r = make_bound("conditional_jensen", phi(ce.table[c]), cphi.table[c]);
    if (r.slack < worst.slack) worst = r;
  }
  worst.context = "worst cell of " + std::to_string(part.cells());
  return worst;
}

bool contraction_check(std::span<const double> x, const FinitePartition& part) {
  check_sizes(x, part);
  const std::vector<Rational> m = exact_means(x, part);
  std::vector<double> ax(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) ax[i] = std::abs(x[i]);
  const std::vector<Rational> ma = exact_means(ax, part);
  for (std::size_t c = 0; c < m.size(); ++c)
    if (abs(m[c]) > ma[c]) return false;
  return true;
}

ProjectionReport l2_projection_check(std::span<const double> x, const FinitePartition& part, std::size_t candidates,
                                     std::uint64_t seed) {
  check_sizes(x, part);
  const std::vector<Rational> xr = to_rational(x);
  const std::vector<Rational> best = exact_means(x, part);
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) total += part.weighted() ? Rational(part.weight(i)) : Rational(1);
  const auto distance = [&](const std::vector<Rational>& table) {
    Rational sse = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Rational d = xr[i] - table[part.cell_of(i)];
      sse += (part.weighted() ? Rational(part.weight(i)) : Rational(1)) * d * d;
    }
    return Rational(sse / total);
  };
  const Rational d0 = distance(best);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double spread = std::max(*hi - *lo, 1.0);
  Stream s(seed, 0x12);
  Rational winner = -1;
  bool optimal = true;
  for (std::size_t k = 0; k < candidates; ++k) {
    std::vector<Rational> cand = best;
    for (Rational& v : cand) v += Rational(spread * (s.uniform() - 0.5) * 0.2);
    const Rational d = distance(cand);
    if (winner < 0 || d < winner) winner = d;
    if (d < d0) optimal = false;
  }
  return {d0.convert_to<double>(), winner < 0 ? d0.convert_to<double>() : winner.convert_to<double>(), optimal};
}

RegressionReport regression_total_expectation(std::span<const double> x, std::span<const std::int64_t> y) {
  require(x.size() == y.size() && !x.empty(), ErrorKind::ShapeMismatch, "paired samples needed");
  const FinitePartition part(y);
  RegressionReport out;
  out.labels.resize(part.cells());
  for (std::size_t c = 0; c < part.cells(); ++c) out.labels[c] = y[part.members(c).front()];
  const CondExpectation ce = cond_expect(x, part);
  out.cell_means = ce.table;
  const std::vector<Rational> means = exact_means(x, part);
  const auto n = static_cast<long long>(x.size());
  Rational recombined = 0;
  double recombined_f = 0.0;
  for (std::size_t c = 0; c < part.cells(); ++c) {
    const Rational freq(static_cast<long long>(part.members(c).size()), n);
    out.frequencies.push_back(freq.convert_to<double>());
    recombined += means[c] * freq;
    recombined_f += ce.table[c] * out.frequencies.back();
  }
  Rational overall = 0;
  for (double v : x) overall += Rational(v);
  overall /= n;
  out.recombined = recombined_f;
  out.overall_mean = overall.convert_to<double>();
  out.exact = recombined == overall;
  return out;
}

LawsReport operator_laws(std::span<const double> x, std::span<const double> y, const FinitePartition& part,
                         double alpha, double beta) {
  check_sizes(x, part);
  check_sizes(y, part);
  const std::vector<Rational> mx = exact_means(x, part);
  const std::vector<Rational> my = exact_means(y, part);
  const Rational a(alpha);
  const Rational b(beta);

  std::vector<Rational> combo(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) combo[i] = a * Rational(x[i]) + b * Rational(y[i]);
  const std::vector<Rational> mc = exact_means(combo, part);
  bool linear = true;
  for (std::size_t c = 0; c < part.cells(); ++c) linear = linear && mc[c] == a * mx[c] + b * my[c];

  // Positivity on x^2 (nonnegative); monotonicity on min(x, y) <= max(x, y).
  std::vector<double> sq(x.size());
  std::vector<double> lo(x.size());
  std::vector<double> hi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sq[i] = x[i] * x[i];
    lo[i] = std::min(x[i], y[i]);
    hi[i] = std::max(x[i], y[i]);
  }
  bool positive = true;
  for (const Rational& v : exact_means(sq, part)) positive = positive && v >= 0;
  const std::vector<Rational> mlo = exact_means(lo, part);
  const std::vector<Rational> mhi = exact_means(hi, part);
  bool monotone = true;
  for (std::size_t c = 0; c < part.cells(); ++c) monotone = monotone && mlo[c] <= mhi[c];

  const std::vector<Rational> once = exact_expand(mx, part);
  const std::vector<Rational> twice = exact_means(once, part);
  const bool idempotent = twice == mx;

  // L1 contraction: mean |E(X|B)| <= mean |X|.
  Rational lhs = 0;
  Rational rhs = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Rational w = part.weighted() ? Rational(part.weight(i)) : Rational(1);
    lhs += w * abs(once[i]);
    rhs += w * abs(Rational(x[i]));
  }
  const bool contraction = lhs <= rhs && contraction_check(x, part);
  return {linear, positive, monotone, idempotent, contraction};
}

BinnedRegression binned_regression(std::span<const double> x, std::span<const double> y, double lo, double hi,
                                   std::size_t bins) {
  require(x.size() == y.size(), ErrorKind::ShapeMismatch, "paired samples needed");
  require(bins >= 1 && hi > lo, ErrorKind::DomainError, "need bins >= 1 and lo < hi");
  BinnedRegression out;
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<double> sums(bins, 0.0);
  out.counts.assign(bins, 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < lo || y[i] >= hi) continue;
    const auto b = std::min(bins - 1, static_cast<std::size_t>((y[i] - lo) / width));
    sums[b] += x[i];
    ++out.counts[b];
  }
  for (std::size_t b = 0; b < bins; ++b) {
    out.centers.push_back(lo + width * (static_cast<double>(b) + 0.5));
    out.means.push_back(out.counts[b] ? sums[b] / static_cast<double>(out.counts[b])
                                      : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

}  // namespace probalab::condexp
