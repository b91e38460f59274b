#include "probalab/inequalities.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>

#include "probalab/condexp.hpp"
#include "probalab/error.hpp"

namespace probalab::ineq {

namespace {

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Standard error of an empirical frequency; a 1/N floor keeps the estimate
// honest when no (or every) path hits the event.
double freq_se(double p, std::size_t n) {
  const double nn = static_cast<double>(n);
  return std::sqrt(std::max(p * (1.0 - p), 1.0 / nn) / nn);
}

void check_convex(const RealFn& phi, double lo, double hi, std::uint64_t seed) {
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

double tail_at_least(const CatalogEntry& law, double x) { return 1.0 - law.law.cdf_left(x); }

}  // namespace

BoundReport markov(const CatalogEntry& law, double x) {
  require(law.law.lep() >= 0.0, ErrorKind::NegativeSupport, "Markov needs X >= 0");
  require(x > 0.0, ErrorKind::DomainError, "Markov threshold must be positive");
  const double mean = law.moments.require_mean();
  return make_bound("markov", tail_at_least(law, x), mean / x, 0.0, law.name);
}

BoundReport markov(std::span<const double> samples, double x) {
  require(!samples.empty(), ErrorKind::DomainError, "no samples");
  require(x > 0.0, ErrorKind::DomainError, "Markov threshold must be positive");
  std::size_t hits = 0;
  for (double v : samples) {
    require(v >= 0.0, ErrorKind::NegativeSupport, "Markov needs X >= 0");
    hits += v >= x;
  }
  const double lhs = static_cast<double>(hits) / static_cast<double>(samples.size());
  return make_bound("markov", lhs, mean_of(samples) / x, 0.0, "empirical");
}

BoundReport chebyshev(const CatalogEntry& law, double x) {
  require(x > 0.0, ErrorKind::DomainError, "Chebyshev threshold must be positive");
  const double m = law.moments.require_mean();
  const double v = law.moments.require_variance();
  const double lhs = law.law.cdf_left(m - x) + (1.0 - law.law.cdf(m + x));
  return make_bound("chebyshev", lhs, v / (x * x), 0.0, law.name);
}

BoundReport chebyshev(std::span<const double> samples, double x) {
  require(!samples.empty(), ErrorKind::DomainError, "no samples");
  require(x > 0.0, ErrorKind::DomainError, "Chebyshev threshold must be positive");
  const double m = mean_of(samples);
  double var = 0.0;
  std::size_t hits = 0;
  for (double v : samples) {
    var += (v - m) * (v - m);
    hits += std::abs(v - m) > x;
  }
  var /= static_cast<double>(samples.size());
  const double lhs = static_cast<double>(hits) / static_cast<double>(samples.size());
  return make_bound("chebyshev", lhs, var / (x * x), 0.0, "empirical");
}

namespace {

BasicBounds basic_from(double eg, double g_sup, double ga, double prob, const std::string& ctx) {
  require(ga > 0.0, ErrorKind::ZeroDenominator, "g(a) must be positive for the upper bound");
  require(g_sup > 0.0, ErrorKind::ZeroDenominator, "g(X) vanishes almost surely");
  const double lower = std::isinf(g_sup) ? 0.0 : (eg - ga) / g_sup;
  return {make_bound("basic_lower", lower, prob, 0.0, ctx), make_bound("basic_upper", prob, eg / ga, 0.0, ctx)};
}

}  // namespace

BasicBounds basic_inequality(const CatalogEntry& law, const RealFn& g, double a) {
  const double eg = catalog::expect(law, g);
  double g_sup = g(law.law.uep());
  if (std::isnan(g_sup)) g_sup = std::numeric_limits<double>::infinity();
  return basic_from(eg, g_sup, g(a), tail_at_least(law, a), law.name);
}

BasicBounds basic_inequality(std::span<const double> samples, const RealFn& g, double a) {
  require(!samples.empty(), ErrorKind::DomainError, "no samples");
  double eg = 0.0;
  double g_sup = 0.0;
  std::size_t hits = 0;
  for (double v : samples) {
    const double gv = g(v);
    eg += gv;
    g_sup = std::max(g_sup, gv);
    hits += v >= a;
  }
  eg /= static_cast<double>(samples.size());
  const double prob = static_cast<double>(hits) / static_cast<double>(samples.size());
  return basic_from(eg, g_sup, g(a), prob, "empirical");
}

std::vector<BoundReport> holder_cs_minkowski_cp(std::span<const double> x, std::span<const double> y, double p,
                                                double q) {
  require(x.size() == y.size() && !x.empty(), ErrorKind::ShapeMismatch, "paired samples needed");
  require(p > 1.0 && q > 1.0 && std::abs(1.0 / p + 1.0 / q - 1.0) < 1e-12, ErrorKind::ConjugateMismatch,
          "Hoelder needs conjugate exponents p, q > 1");
  const std::size_t n = x.size();
  std::vector<double> xy(n);
  std::vector<double> sum(n);
  for (std::size_t i = 0; i < n; ++i) {
    xy[i] = x[i] * y[i];
    sum[i] = x[i] + y[i];
  }
  const double exy = std::abs(mean_of(xy));
  std::vector<BoundReport> out;
  out.push_back(make_bound("holder", exy, dist::lp_norm(x, p) * dist::lp_norm(y, q)));
  out.push_back(make_bound("cauchy_schwarz", exy, dist::lp_norm(x, 2.0) * dist::lp_norm(y, 2.0)));
  out.push_back(make_bound("minkowski", dist::lp_norm(sum, p), dist::lp_norm(x, p) + dist::lp_norm(y, p)));
  const auto moment = [p](std::span<const double> v) {
    double s = 0.0;
    for (double a : v) s += std::pow(std::abs(a), p);
    return s / static_cast<double>(v.size());
  };
  out.push_back(make_bound("cp", moment(sum), std::pow(2.0, p - 1.0) * (moment(x) + moment(y))));
  return out;
}

BoundReport jensen(std::span<const double> samples, const RealFn& phi, std::uint64_t seed) {
  require(!samples.empty(), ErrorKind::DomainError, "no samples");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  check_convex(phi, *lo, *hi, seed);
  double ephi = 0.0;
  for (double v : samples) ephi += phi(v);
  ephi /= static_cast<double>(samples.size());
  return make_bound("jensen", phi(mean_of(samples)), ephi, 0.0, "empirical");
}

BoundReport jensen(const CatalogEntry& law, const RealFn& phi, std::uint64_t seed) {
  const double m = law.moments.require_mean();
  const double lo = std::max(law.law.lep(), law.center - 6.0 * law.spread);
  const double hi = std::min(law.law.uep(), law.center + 6.0 * law.spread);
  check_convex(phi, lo, hi, seed);
  return make_bound("jensen", phi(m), catalog::expect(law, phi), 0.0, law.name);
}

InclusionExclusion inclusion_exclusion(const EventMatrix& ev) {
  require(ev.events <= 20, ErrorKind::TooManyEvents, "inclusion-exclusion supports at most 20 events");
  require(ev.outcomes > 0 && ev.bits.size() == ev.outcomes * ev.events, ErrorKind::ShapeMismatch,
          "event matrix shape");
  const std::size_t n = ev.events;
  // binom[m][k] for m, k <= 20
  std::int64_t binom[21][21] = {};
  for (int m = 0; m <= 20; ++m) {
    binom[m][0] = 1;
    for (int k = 1; k <= m; ++k) binom[m][k] = binom[m - 1][k - 1] + (k <= m - 1 ? binom[m - 1][k] : 0);
  }
  std::vector<std::int64_t> s(n + 1, 0);  // N * S_k
  std::int64_t in_union = 0;
  for (std::size_t r = 0; r < ev.outcomes; ++r) {
    int pop = 0;
    for (std::size_t j = 0; j < n; ++j) pop += ev.at(r, j);
    in_union += pop > 0;
    for (int k = 1; k <= pop; ++k) s[static_cast<std::size_t>(k)] += binom[pop][k];
  }
  InclusionExclusion out;
  const double total = static_cast<double>(ev.outcomes);
  out.exact = static_cast<double>(in_union) / total;
  out.bonferroni = true;
  std::int64_t partial = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    partial += (k % 2 == 1) ? s[k] : -s[k];
    out.partials.push_back(static_cast<double>(partial) / total);
    // alpha_{k-1}: index even (k odd) is an upper bound, odd a lower bound.
    const bool ok = (k % 2 == 1) ? partial >= in_union : partial <= in_union;
    out.bonferroni = out.bonferroni && ok;
  }
  if (n > 0) out.bonferroni = out.bonferroni && partial == in_union;
  return out;
}

std::pair<BoundReport, BoundReport> elementary_exp_inequality(double t) {
  require(t >= 0.0, ErrorKind::DomainError, "t must be nonnegative");
  return {make_bound("exp_lower", std::exp(t * (1.0 - t)), 1.0 + t),
          make_bound("exp_upper", 1.0 + t, std::exp(t))};
}

std::pair<BoundReport, BoundReport> mgf_sandwich(const CatalogEntry& law, double c, double t) {
  require(t > 0.0 && t * c <= 1.0 + 1e-15, ErrorKind::DomainError, "mgf sandwich needs t > 0 and tc <= 1");
  require(law.law.lep() >= -c * (1.0 + 1e-12) && law.law.uep() <= c * (1.0 + 1e-12), ErrorKind::DomainError, "law must be bounded by c");
  const double mean = law.moments.require_mean();
  require(std::abs(mean) <= 1e-12 * std::max(1.0, c), ErrorKind::DomainError, "law must be centered");
  const double s2 = law.moments.require_variance();
  const double mgf = law.mgf ? law.mgf->eval(t) : catalog::expect(law, [t](double x) { return std::exp(t * x); });
  const double base = 0.5 * t * t * s2;
  return {make_bound("mgf_lower", std::exp(base * (1.0 - t * c)), mgf, 0.0, law.name),
          make_bound("mgf_upper", mgf, std::exp(base * (1.0 + 0.5 * t * c)), 0.0, law.name)};
}

Matrix simulate_increments(const std::function<double(Stream&, std::size_t)>& draw, std::size_t n, std::size_t paths,
                           std::uint64_t seed, kernels::Exec exec) {
  Matrix out(paths, n);
  kernels::for_blocks(
      paths, 256, seed,
      [&](Stream& s, std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
          auto row = out.row(r);
          for (std::size_t k = 0; k < n; ++k) row[k] = draw(s, k + 1);
        }
      },
      exec);
  return out;
}

namespace {

struct PathSummary {
  double sn;
  double max_s;
  double max_abs;
};

std::vector<PathSummary> summarize(const Matrix& inc) {
  std::vector<PathSummary> out(inc.rows());
  for (std::size_t r = 0; r < inc.rows(); ++r) {
    double s = 0.0;
    double mx = -std::numeric_limits<double>::infinity();
    double ma = 0.0;
    for (double x : inc.row(r)) {
      s += x;
      mx = std::max(mx, s);
      ma = std::max(ma, std::abs(s));
    }
    out[r] = {s, mx, ma};
  }
  return out;
}

template <typename Pred>
double frequency(const std::vector<PathSummary>& paths, Pred pred) {
  std::size_t hits = 0;
  for (const auto& p : paths) hits += pred(p);
  return static_cast<double>(hits) / static_cast<double>(paths.size());
}

}  // namespace

MaximalBounds kolmogorov_maximal(const Matrix& increments, double eps, double sn2, std::optional<double> c) {
  require(increments.rows() > 0 && increments.cols() > 0, ErrorKind::ShapeMismatch, "empty increment matrix");
  require(eps > 0.0 && sn2 > 0.0, ErrorKind::DomainError, "need eps > 0 and s_n^2 > 0");
  const auto paths = summarize(increments);
  const double p = frequency(paths, [eps](const PathSummary& s) { return s.max_abs >= eps; });
  const double tol = 3.0 * freq_se(p, paths.size());
  MaximalBounds out{make_bound("kolmogorov_upper", p, sn2 / (eps * eps), tol), std::nullopt};
  if (c) {
    require(linalg::max_abs(increments) <= *c, ErrorKind::UnboundedForLowerBound, "an increment exceeds c");
    out.lower = make_bound("kolmogorov_lower", 1.0 - (eps + *c) * (eps + *c) / sn2, p, tol);
  }
  return out;
}

BoundReport exponential_bound(const Matrix& increments, double eps, double sn, double max_abs) {
  require(eps > 0.0 && sn > 0.0, ErrorKind::DomainError, "need eps > 0 and s_n > 0");
  const double c = max_abs / sn;
  const auto paths = summarize(increments);
  const double p = frequency(paths, [&](const PathSummary& s) { return s.sn > eps * sn; });
  const double bound = c * eps <= 1.0 ? std::exp(-0.5 * eps * eps * (1.0 - 0.5 * eps * c))
                                      : std::exp(-eps / (4.0 * c));
  return make_bound("exponential_bound", p, bound, 3.0 * freq_se(p, paths.size()),
                    c * eps <= 1.0 ? "c eps <= 1" : "c eps > 1");
}

BoundReport billingsley_maximal(const Matrix& increments, double eps, double var_sn) {
  const auto paths = summarize(increments);
  const double p_max = frequency(paths, [eps](const PathSummary& s) { return s.max_s >= eps; });
  const double shift = eps - std::sqrt(2.0 * var_sn);
  const double p_end = frequency(paths, [shift](const PathSummary& s) { return s.sn >= shift; });
  const double se1 = freq_se(p_max, paths.size());
  const double se2 = freq_se(p_end, paths.size());
  return make_bound("billingsley", p_max, 2.0 * p_end, 3.0 * std::sqrt(se1 * se1 + 4.0 * se2 * se2));
}

BoundReport etemadi_maximal(const Matrix& increments, double alpha) {
  require(alpha > 0.0, ErrorKind::DomainError, "alpha must be positive");
  const std::size_t n = increments.cols();
  const std::size_t paths = increments.rows();
  std::vector<std::size_t> hits(n, 0);
  std::size_t max_hits = 0;
  for (std::size_t r = 0; r < paths; ++r) {
    double s = 0.0;
    double ma = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s += increments(r, k);
      ma = std::max(ma, std::abs(s));
      hits[k] += std::abs(s) >= alpha;
    }
    max_hits += ma >= 3.0 * alpha;
  }
  const double np = static_cast<double>(paths);
  const double lhs = static_cast<double>(max_hits) / np;
  const double worst = static_cast<double>(*std::max_element(hits.begin(), hits.end())) / np;
  const double se1 = freq_se(lhs, paths);
  const double se2 = freq_se(worst, paths);
  return make_bound("etemadi", lhs, 3.0 * worst, 3.0 * std::sqrt(se1 * se1 + 9.0 * se2 * se2));
}

BoundReport submartingale_maximal(const Matrix& increments, double eps) {
  require(eps > 0.0, ErrorKind::DomainError, "eps must be positive");
  const auto paths = summarize(increments);
  const double p = frequency(paths, [eps](const PathSummary& s) { return s.max_s >= eps; });
  double m = 0.0;
  double m2 = 0.0;
  for (const auto& s : paths) {
    const double v = std::max(s.sn, 0.0);
    m += v;
    m2 += v * v;
  }
  const double np = static_cast<double>(paths.size());
  m /= np;
  const double sd = std::sqrt(std::max(0.0, m2 / np - m * m));
  const double se1 = freq_se(p, paths.size());
  const double se2 = sd / std::sqrt(np) / eps;
  return make_bound("submartingale_maximal", p, m / eps, 3.0 * std::sqrt(se1 * se1 + se2 * se2));
}

// ---------------------------------------------------------------------------
// property suite

namespace {

double unif(Stream& s, double lo, double hi) { return lo + (hi - lo) * s.uniform(); }
std::size_t pick(Stream& s, std::size_t n) { return static_cast<std::size_t>(s.bits() % n); }

CatalogEntry random_nonnegative_law(Stream& s) {
  switch (pick(s, 11)) {
    case 0: return catalog::make_law("exponential", {{"lambda", unif(s, 0.2, 5.0)}});
    case 1: return catalog::make_law("gamma", {{"a", unif(s, 0.3, 6.0)}, {"b", unif(s, 0.3, 4.0)}});
    case 2: return catalog::make_law("uniform", {{"a", 0.0}, {"b", unif(s, 0.1, 10.0)}});
    case 3: return catalog::make_law("poisson", {{"lambda", unif(s, 0.1, 20.0)}});
    case 4: return catalog::make_law("binomial", {{"n", std::floor(unif(s, 1.0, 40.0))}, {"p", unif(s, 0.05, 0.95)}});
    case 5: return catalog::make_law("geometric", {{"p", unif(s, 0.05, 0.95)}});
    case 6: return catalog::make_law("beta", {{"a", unif(s, 0.5, 5.0)}, {"b", unif(s, 0.5, 5.0)}});
    case 7: return catalog::make_law("chi_square", {{"d", std::floor(unif(s, 1.0, 12.0))}});
    case 8: return catalog::make_law("weibull", {{"a", unif(s, 0.5, 3.0)}, {"b", unif(s, 0.5, 4.0)}});
    case 9: return catalog::make_law("pareto", {{"a", unif(s, 0.5, 2.0)}, {"alpha", unif(s, 2.5, 6.0)}});
    default: return catalog::make_law("constant", {{"a", unif(s, 0.0, 5.0)}});
  }
}

CatalogEntry random_square_integrable_law(Stream& s) {
  switch (pick(s, 9)) {
    case 0: return catalog::make_law("gaussian", {{"m", unif(s, -3.0, 3.0)}, {"sigma", unif(s, 0.2, 3.0)}});
    case 1: return catalog::make_law("laplace", {{"lambda", unif(s, 0.3, 3.0)}});
    case 2: return catalog::make_law("logistic", {{"a", unif(s, -2.0, 2.0)}, {"b", unif(s, 0.3, 2.0)}});
    case 3: return catalog::make_law("gumbel", {{"a", unif(s, -2.0, 2.0)}, {"b", unif(s, 0.3, 2.0)}});
    case 4: return catalog::make_law("student", {{"n", std::floor(unif(s, 3.0, 12.0))}});
    case 5: return catalog::make_law("uniform", {{"a", unif(s, -3.0, 0.0)}, {"b", unif(s, 0.1, 3.0)}});
    case 6: return catalog::make_law("rademacher");
    case 7: return catalog::make_law("uniform_discrete", {{"n", std::floor(unif(s, 1.0, 12.0))}});
    default: return random_nonnegative_law(s);
  }
}

std::vector<double> random_array(Stream& s, std::size_t n) {
  std::vector<double> v(n);
  const std::size_t kind = pick(s, 4);
  for (double& x : v) {
    switch (kind) {
      case 0: x = unif(s, -1.0, 1.0); break;
      case 1: x = s.normal() * 2.0; break;
      case 2: x = s.exponential(1.0); break;
      default: x = std::floor(unif(s, -5.0, 6.0)); break;
    }
  }
  return v;
}

RealFn random_convex(Stream& s) {
  const double a = unif(s, -1.0, 1.0);
  const double b = unif(s, -2.0, 2.0);
  switch (pick(s, 6)) {
    case 0: return [](double x) { return x * x; };
    case 1: return [](double x) { return std::abs(x); };
    case 2: return [](double x) { return std::exp(0.5 * x); };
    case 3: return [a](double x) { return std::max(x - a, 0.0); };
    case 4: return [](double x) { return x * x * x * x; };
    default: return [a, b](double x) { return a + b * x; };
  }
}

// Bounded centered increments: returns (draw, variance, bound) for index k.
struct BoundedSpec {
  std::vector<double> scale;
  int kind = 0;  // 0 Rademacher, 1 uniform(-a, a), 2 centered Bernoulli(p)
  double p = 0.5;

  double variance(std::size_t k) const {
    const double a = scale[k - 1];
    switch (kind) {
      case 0: return a * a;
      case 1: return a * a / 3.0;
      default: return a * a * p * (1.0 - p);
    }
  }
  double bound(std::size_t k) const {
    const double a = scale[k - 1];
    return kind == 2 ? a * std::max(p, 1.0 - p) : a;
  }
  double draw(Stream& s, std::size_t k) const {
    const double a = scale[k - 1];
    switch (kind) {
      case 0: return a * s.rademacher();
      case 1: return a * (2.0 * s.uniform() - 1.0);
      default: return a * ((s.uniform() < p ? 1.0 : 0.0) - p);
    }
  }
};

BoundedSpec random_bounded_spec(Stream& s, std::size_t n) {
  BoundedSpec spec;
  spec.kind = static_cast<int>(pick(s, 3));
  spec.p = unif(s, 0.1, 0.9);
  const bool equal = pick(s, 2) == 0;
  const double base = unif(s, 0.2, 3.0);
  for (std::size_t k = 0; k < n; ++k) spec.scale.push_back(equal ? base : unif(s, 0.2, 3.0));
  return spec;
}

class Tally {
 public:
  explicit Tally(std::vector<BoundReport>* sink) : sink_(sink) {}
  void add(const std::string& group, const BoundReport& r) {
    SuiteSummary& s = bucket(group);
    ++s.instances;
    const double margin = r.slack + r.tolerance;
    if (!r.satisfied) ++s.violations;
    s.worst_slack = s.instances == 1 ? margin : std::min(s.worst_slack, margin);
    if (sink_) {
      BoundReport copy = r;
      copy.context = group + (r.context.empty() ? "" : ": " + r.context);
      sink_->push_back(std::move(copy));
    }
  }
  void add_flag(const std::string& group, bool ok) {
    add(group, make_bound(group, ok ? 0.0 : 1.0, 0.0));
  }
  std::vector<SuiteSummary> result() const { return order_; }

 private:
  SuiteSummary& bucket(const std::string& group) {
    for (auto& s : order_)
      if (s.inequality == group) return s;
    order_.push_back({group, 0, 0, 0.0});
    return order_.back();
  }
  std::vector<SuiteSummary> order_;
  std::vector<BoundReport>* sink_;
};

}  // namespace

std::vector<SuiteSummary> property_suite(const SuiteOptions& opt, std::vector<BoundReport>* all) {
  Tally tally(all);
  const std::size_t m = opt.instances;
  const auto stream_for = [&](std::uint64_t tag, std::size_t i) { return Stream(mix64(opt.seed) ^ tag, i); };

  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(1, i);
    if (i % 2 == 0) {
      const CatalogEntry law = random_nonnegative_law(s);
      const double mean = law.moments.require_mean();
      const double x = std::max(mean, 0.05) * unif(s, 0.1, 5.0);
      tally.add("markov", markov(law, x));
    } else {
      std::vector<double> v = random_array(s, 10 + pick(s, 200));
      for (double& a : v) a = std::abs(a);
      tally.add("markov", markov(v, unif(s, 0.05, 4.0)));
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(2, i);
    if (i % 2 == 0) {
      const CatalogEntry law = random_square_integrable_law(s);
      const double sd = std::sqrt(law.moments.require_variance());
      tally.add("chebyshev", chebyshev(law, std::max(sd, 0.05) * unif(s, 0.2, 4.0)));
    } else {
      const std::vector<double> v = random_array(s, 10 + pick(s, 200));
      tally.add("chebyshev", chebyshev(v, unif(s, 0.05, 4.0)));
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(3, i);
    const CatalogEntry law = random_nonnegative_law(s);
    const double a = law.center + law.spread * unif(s, -1.0, 2.0);
    const double t = unif(s, 0.05, 1.0);
    RealFn g;
    switch (pick(s, 3)) {
      case 0: g = [](double x) { return std::max(x, 0.0); }; break;
      case 1: g = [](double x) { return std::atan(x) + std::numbers::pi / 2.0; }; break;
      default: g = [t](double x) { return std::exp(t * std::min(x, 50.0)); }; break;
    }
    if (g(a) <= 0.0) continue;
    const BasicBounds b = (i % 2 == 0) ? basic_inequality(law, g, a) : basic_inequality(
                                                                           catalog::sample(law, 200, s.bits()), g, a);
    tally.add("basic", b.lower);
    tally.add("basic", b.upper);
  }

  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(4, i);
    const std::size_t n = 5 + pick(s, 300);
    const std::vector<double> x = random_array(s, n);
    const std::vector<double> y = random_array(s, n);
    const double p = unif(s, 1.05, 6.0);
    const auto reports = holder_cs_minkowski_cp(x, y, p, p / (p - 1.0));
    for (const auto& r : reports) tally.add(r.name, r);
  }

  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(5, i);
    const std::vector<double> x = random_array(s, 5 + pick(s, 300));
    tally.add("jensen", jensen(x, random_convex(s), s.bits()));
  }

  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(6, i);
    const std::size_t n = 10 + pick(s, 300);
    const std::vector<double> x = random_array(s, n);
    std::vector<std::int64_t> labels(n);
    const std::size_t cells = 1 + pick(s, 8);
    for (auto& l : labels) l = static_cast<std::int64_t>(pick(s, cells));
    const condexp::FinitePartition part(labels);
    tally.add("conditional_jensen", condexp::conditional_jensen(x, part, random_convex(s), s.bits()));
  }

  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(7, i);
    EventMatrix ev;
    ev.outcomes = 10 + pick(s, 500);
    ev.events = 1 + pick(s, 12);
    ev.bits.resize(ev.outcomes * ev.events);
    std::vector<double> prob(ev.events);
    for (double& q : prob) q = unif(s, 0.0, 0.8);
    const bool nested = pick(s, 4) == 0;
    for (std::size_t r = 0; r < ev.outcomes; ++r) {
      const double u = s.uniform();
      for (std::size_t j = 0; j < ev.events; ++j)
        ev.bits[r * ev.events + j] = nested ? (u < prob[j]) : (s.uniform() < prob[j]);
    }
    tally.add_flag("bonferroni", inclusion_exclusion(ev).bonferroni);
  }

  // Maximal inequalities on bounded centered increments.
  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(8, i);
    const std::size_t n = 1 + pick(s, 30);
    const BoundedSpec spec = random_bounded_spec(s, n);
    double sn2 = 0.0;
    double c = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      sn2 += spec.variance(k);
      c = std::max(c, spec.bound(k));
    }
    const Matrix inc = simulate_increments([&spec](Stream& st, std::size_t k) { return spec.draw(st, k); }, n,
                                           opt.paths, s.bits());
    const double sn = std::sqrt(sn2);

    const MaximalBounds km = kolmogorov_maximal(inc, sn * unif(s, 0.2, 3.0), sn2, c);
    tally.add("kolmogorov_upper", km.upper);
    tally.add("kolmogorov_lower", *km.lower);

    tally.add("exponential_bound", exponential_bound(inc, unif(s, 0.1, 4.0), sn, c));
    tally.add("billingsley", billingsley_maximal(inc, sn * unif(s, 0.1, 4.0), sn2));
  }

  // Etemadi and the submartingale case on unbounded, non-centered increments.
  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(9, i);
    const std::size_t n = 1 + pick(s, 30);
    const double mu = unif(s, 0.0, 0.5);
    const double sigma = unif(s, 0.2, 2.0);
    const bool gaussian = pick(s, 2) == 0;
    const auto draw = [=](Stream& st, std::size_t) {
      return gaussian ? mu + sigma * st.normal() : mu + sigma * (st.exponential(1.0) - 1.0);
    };
    const Matrix inc = simulate_increments(draw, n, opt.paths, s.bits());
    const double sn = sigma * std::sqrt(static_cast<double>(n));
    tally.add("etemadi", etemadi_maximal(inc, sn * unif(s, 0.1, 2.0)));
    tally.add("submartingale_maximal", submartingale_maximal(inc, sn * unif(s, 0.1, 3.0)));
  }

  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(10, i);
    const double c = unif(s, 0.1, 3.0);
    CatalogEntry law = [&]() {
      switch (pick(s, 3)) {
        case 0: return catalog::affine(catalog::make_law("rademacher"), c, 0.0);
        case 1: return catalog::make_law("uniform", {{"a", -c}, {"b", c}});
        default: {
          const double p = unif(s, 0.1, 0.9);
          // Two atoms scaled so the larger one sits at c.
          const double scale = c / std::max(p, 1.0 - p);
          return catalog::discrete_table("centered_bernoulli", {-p * scale, (1.0 - p) * scale}, {1.0 - p, p});
        }
      }
    }();
    const auto [lo, hi] = mgf_sandwich(law, c, unif(s, 0.01, 1.0) / c);
    tally.add("mgf_sandwich", lo);
    tally.add("mgf_sandwich", hi);
  }

  for (std::size_t i = 0; i < m; ++i) {
    Stream s = stream_for(11, i);
    const double t = i == 0 ? 0.0 : unif(s, 0.0, 10.0);
    const auto [lo, hi] = elementary_exp_inequality(t);
    tally.add("elementary_exp", lo);
    tally.add("elementary_exp", hi);
  }

  return tally.result();
}

}  // namespace probalab::ineq
