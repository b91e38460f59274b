#include "probalab/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "probalab/error.hpp"
#include "probalab/normal_approx.hpp"
#include "probalab/quadrature.hpp"

namespace probalab::limits {

TriangularSpec TriangularSpec::iid_of(const CatalogEntry& entry) {
  return {entry.name + "_iid", [entry](std::size_t) { return entry; }, true};
}

TriangularSpec TriangularSpec::weighted(const CatalogEntry& base, std::function<double(std::size_t)> weights,
                                        std::string name) {
  return {std::move(name), [base, weights](std::size_t k) { return catalog::affine(base, weights(k), 0.0); }, false};
}

MaterializedSpec::MaterializedSpec(const TriangularSpec& spec, std::size_t n) : n_(n), iid_(spec.iid) {
  require(n >= 1, ErrorKind::DomainError, "need n >= 1");
  if (iid_) {
    laws_.push_back(spec.law(1));
  } else {
    laws_.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) laws_.push_back(spec.law(k));
  }
}

double MaterializedSpec::mean_sum() const {
  if (iid_) return static_cast<double>(n_) * laws_.front().moments.require_mean();
  double s = 0.0;
  for (const auto& l : laws_) s += l.moments.require_mean();
  return s;
}

double MaterializedSpec::variance_sum() const {
  if (iid_) return static_cast<double>(n_) * laws_.front().moments.require_variance();
  double s = 0.0;
  for (const auto& l : laws_) s += l.moments.require_variance();
  return s;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converges: return "CONVERGES";
    case Verdict::Diverges: return "DIVERGES";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

SeriesSummary series_verdict(const std::function<double(std::size_t)>& term, std::size_t n) {
  require(n >= 4, ErrorKind::DomainError, "series check needs n >= 4");
  double partial = 0.0;
  double last = 0.0;
  double prev = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double a = term(k);
    partial += a;
    if (k > n / 2) last += a;
    else if (k > n / 4) prev += a;
  }
  SeriesSummary s{partial, last, 0.0, 0.0, Verdict::Inconclusive};
  const double al = std::abs(last);
  const double ap = std::abs(prev);
  if (al == 0.0 && ap == 0.0) {
    s.verdict = Verdict::Converges;
    return s;
  }
  if (ap == 0.0) {
    s.block_ratio = std::numeric_limits<double>::infinity();
    s.tail_estimate = std::numeric_limits<double>::infinity();
    s.verdict = Verdict::Diverges;
    return s;
  }
  s.block_ratio = al / ap;
  s.tail_estimate = s.block_ratio < 1.0 ? al * s.block_ratio / (1.0 - s.block_ratio)
                                        : std::numeric_limits<double>::infinity();
  if (s.block_ratio <= 0.75) s.verdict = Verdict::Converges;
  else if (s.block_ratio >= 0.95) s.verdict = Verdict::Diverges;
  return s;
}

LimitReport wlln_experiment(const CatalogEntry& law, const std::vector<std::size_t>& ns_in, std::size_t trials,
                            std::uint64_t seed) {
  const double mu = law.moments.require_mean();
  require(law.sampler != nullptr, ErrorKind::DomainError, "law has no sampler");
  require(!ns_in.empty() && trials > 0, ErrorKind::DomainError, "need checkpoints and trials");
  std::vector<std::size_t> ns = ns_in;
  std::sort(ns.begin(), ns.end());
  const std::size_t n_max = ns.back();
  const double eps[] = {0.1, 0.05};

  // dev[t * ns.size() + j] = |S_{n_j} / n_j - mu| for trial t
  std::vector<double> dev(trials * ns.size());
  kernels::for_blocks(trials, 1, seed, [&](Stream& s, std::size_t t, std::size_t) {
    double sum = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 1; k <= n_max; ++k) {
      sum += law.sampler(s);
      while (j < ns.size() && ns[j] == k) {
        dev[t * ns.size() + j] = std::abs(sum / static_cast<double>(k) - mu);
        ++j;
      }
    }
  });

  LimitReport r;
  r.experiment = "wlln";
  r.predicted = mu;
  r.seed = seed;
  r.passed = true;
  for (double e : eps) {
    double prev = -1.0;
    for (std::size_t j = 0; j < ns.size(); ++j) {
      std::size_t hits = 0;
      for (std::size_t t = 0; t < trials; ++t) hits += dev[t * ns.size() + j] > e;
      const double f = static_cast<double>(hits) / static_cast<double>(trials);
      std::ostringstream key;
      key << "eps=" << e << ",n=" << ns[j];
      r.criteria[key.str()] = f;
      if (e == eps[0]) r.trajectory.emplace_back(static_cast<double>(ns[j]), f);
      if (prev >= 0.0) {
        const double se = std::sqrt(std::max(prev * (1.0 - prev), 1.0 / trials) / static_cast<double>(trials));
        if (f > prev + 3.0 * se) r.passed = false;
      }
      prev = f;
    }
  }
  return r;
}

SllnResult slln_kolmogorov_criterion(const TriangularSpec& spec, const std::function<double(std::size_t)>& b,
                                     std::size_t n, std::uint64_t seed, double tol) {
  require(n >= 4, ErrorKind::DomainError, "need n >= 4");
  const MaterializedSpec laws(spec, spec.iid ? 1 : n);
  const auto law_at = [&](std::size_t k) -> const CatalogEntry& { return laws.at(spec.iid ? 1 : k); };
  SllnResult out;
  out.criterion = series_verdict(
      [&](std::size_t k) {
        const double bk = b(k);
        return law_at(k).moments.require_variance() / (bk * bk);
      },
      n);

  LimitReport& path = out.path;
  path.experiment = "slln";
  path.seed = seed;
  path.predicted = 0.0;
  Stream s(seed, 0);
  double sum = 0.0;
  double mean = 0.0;
  double tail_max = 0.0;
  std::size_t next = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const CatalogEntry& law = law_at(k);
    sum += law.sampler(s);
    mean += law.moments.require_mean();
    const double stat = (sum - mean) / b(k);
    if (k >= n / 2) tail_max = std::max(tail_max, std::abs(stat));
    if (k == next || k == n) {
      path.trajectory.emplace_back(static_cast<double>(k), stat);
      next *= 2;
    }
  }
  out.tail_max = tail_max;
  path.criteria["criterion_partial"] = out.criterion.partial;
  path.criteria["criterion_block_ratio"] = out.criterion.block_ratio;
  path.criteria["tail_max"] = tail_max;
  path.criteria["endpoint"] = path.trajectory.back().second;
  path.passed = out.criterion.verdict == Verdict::Converges && tail_max < tol;
  return out;
}

namespace {

quad::Options options_for(const CatalogEntry& law, double tol = 1e-11) {
  quad::Options opt;
  opt.abs_tol = tol;
  opt.scale = std::max(law.spread, 1e-6);
  opt.center = law.center;
  opt.soften_endpoints = true;
  return opt;
}

// sum over atoms of f(x) p(x) for x in [lo, hi]; assumes finitely many there.
double atom_sum(const CatalogEntry& law, double lo, double hi, const std::function<double(double)>& f) {
  double s = 0.0;
  for (double x : law.law.atoms(lo, hi, 50'000'000)) s += f(x) * law.law.mass(x);
  return s;
}

bool finite_support(const CatalogEntry& law) {
  return std::isfinite(law.law.lep()) && std::isfinite(law.law.uep());
}

// E[h(X) 1(X in [lo, hi])] for continuous laws.
double ac_integral(const CatalogEntry& law, double lo, double hi, const std::function<double(double)>& h,
                   double tol = 1e-11) {
  lo = std::max(lo, law.law.lep());
  hi = std::min(hi, law.law.uep());
  if (!(hi > lo)) return 0.0;
  const auto f = [&](double x) { return h(x) * law.law.density(x); };
  const quad::Result r = quad::integrate(f, lo, hi, options_for(law, tol));
  if (!r.converged) fail(ErrorKind::QuadratureFailure, "truncated moment quadrature failed for " + law.name);
  return r.value;
}

struct Truncated {
  double mean;
  double second;
};

// Moments of X^(c) = X 1(|X| <= c).
Truncated truncated_moments(const CatalogEntry& law, double c) {
  const auto id = [](double x) { return x; };
  const auto sq = [](double x) { return x * x; };
  if (law.is_discrete()) return {atom_sum(law, -c, c, id), atom_sum(law, -c, c, sq)};
  return {ac_integral(law, -c, c, id), ac_integral(law, -c, c, sq)};
}

double prob_abs_at_least(const CatalogEntry& law, double c) {
  return (1.0 - law.law.cdf_left(c)) + law.law.cdf(-c);
}

}  // namespace

ThreeSeriesReport three_series_check(const TriangularSpec& spec, double c, std::size_t n, std::size_t flat_m,
                                     std::size_t paths, std::uint64_t seed) {
  require(c > 0.0, ErrorKind::DomainError, "truncation level must be positive");
  const MaterializedSpec laws(spec, std::max(n, 2 * flat_m));
  std::vector<double> p(n);
  std::vector<double> v(n);
  std::vector<double> e(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (spec.iid && k > 1) {
      p[k - 1] = p[0];
      v[k - 1] = v[0];
      e[k - 1] = e[0];
      continue;
    }
    const CatalogEntry& law = laws.at(k);
    const Truncated t = truncated_moments(law, c);
    p[k - 1] = prob_abs_at_least(law, c);
    e[k - 1] = t.mean;
    v[k - 1] = std::max(0.0, t.second - t.mean * t.mean);
  }
  ThreeSeriesReport out;
  out.prob = series_verdict([&](std::size_t k) { return p[k - 1]; }, n);
  out.variance = series_verdict([&](std::size_t k) { return v[k - 1]; }, n);
  out.mean = series_verdict([&](std::size_t k) { return e[k - 1]; }, n);
  const Verdict all[] = {out.prob.verdict, out.variance.verdict, out.mean.verdict};
  if (std::all_of(std::begin(all), std::end(all), [](Verdict x) { return x == Verdict::Converges; }))
    out.verdict = Verdict::Converges;
  else if (std::any_of(std::begin(all), std::end(all), [](Verdict x) { return x == Verdict::Diverges; }))
    out.verdict = Verdict::Diverges;
  else
    out.verdict = Verdict::Inconclusive;

  out.m = flat_m;
  const std::vector<double> gaps = kernels::run_trials(paths, seed, [&](Stream& s) {
    double sum = 0.0;
    double at_m = 0.0;
    for (std::size_t k = 1; k <= 2 * flat_m; ++k) {
      sum += laws.at(k).sampler(s);
      if (k == flat_m) at_m = sum;
    }
    return std::abs(sum - at_m);
  });
  out.flatness = *std::max_element(gaps.begin(), gaps.end());
  return out;
}

double truncated_second_moment(const CatalogEntry& law, double center, double r) {
  require(r >= 0.0, ErrorKind::DomainError, "truncation radius must be nonnegative");
  const auto sq = [center](double x) { return (x - center) * (x - center); };
  if (law.is_discrete()) {
    if (finite_support(law)) {
      // Atoms strictly outside [center - r, center + r].
      double s = 0.0;
      for (double x : law.law.atoms(law.law.lep(), law.law.uep(), 50'000'000))
        if (std::abs(x - center) > r) s += sq(x) * law.law.mass(x);
      return s;
    }
    const double m = law.moments.require_mean();
    const double total = law.moments.require_variance() + (m - center) * (m - center);
    double inner = 0.0;
    for (double x : law.law.atoms(center - r, center + r, 50'000'000))
      if (std::abs(x - center) <= r) inner += sq(x) * law.law.mass(x);
    return std::max(0.0, total - inner);
  }
  return ac_integral(law, center + r, quad::kInf, sq) + ac_integral(law, -quad::kInf, center - r, sq);
}

double central_abs_moment(const CatalogEntry& law, double center, double p) {
  const auto h = [center, p](double x) { return std::pow(std::abs(x - center), p); };
  if (law.is_discrete()) return catalog::expect(law, h);
  return ac_integral(law, -quad::kInf, center, h, 1e-10) + ac_integral(law, center, quad::kInf, h, 1e-10);
}

double lindeberg_g(const TriangularSpec& spec, std::size_t n, double eps) {
  const MaterializedSpec laws(spec, n);
  const double sn2 = laws.variance_sum();
  require(sn2 > 0.0, ErrorKind::DomainError, "s_n^2 must be positive");
  const double r = eps * std::sqrt(sn2);
  if (laws.iid()) {
    const CatalogEntry& law = laws.at(1);
    return static_cast<double>(n) * truncated_second_moment(law, law.moments.require_mean(), r) / sn2;
  }
  double s = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const CatalogEntry& law = laws.at(k);
    s += truncated_second_moment(law, law.moments.require_mean(), r);
  }
  return s / sn2;
}

double lyapounov_ratio(const TriangularSpec& spec, std::size_t n, double delta) {
  require(delta > 0.0, ErrorKind::DomainError, "delta must be positive");
  const MaterializedSpec laws(spec, n);
  const double sn2 = laws.variance_sum();
  require(sn2 > 0.0, ErrorKind::DomainError, "s_n^2 must be positive");
  double s = 0.0;
  if (laws.iid()) {
    const CatalogEntry& law = laws.at(1);
    s = static_cast<double>(n) * central_abs_moment(law, law.moments.require_mean(), 2.0 + delta);
  } else {
    for (std::size_t k = 1; k <= n; ++k) {
      const CatalogEntry& law = laws.at(k);
      s += central_abs_moment(law, law.moments.require_mean(), 2.0 + delta);
    }
  }
  return s / std::pow(sn2, 1.0 + delta / 2.0);
}

double feller_max(const TriangularSpec& spec, std::size_t n) {
  const MaterializedSpec laws(spec, n);
  const double sn2 = laws.variance_sum();
  require(sn2 > 0.0, ErrorKind::DomainError, "s_n^2 must be positive");
  if (laws.iid()) return laws.at(1).moments.require_variance() / sn2;
  double m = 0.0;
  for (std::size_t k = 1; k <= n; ++k) m = std::max(m, laws.at(k).moments.require_variance());
  return m / sn2;
}

const NormalGrid& normal_grid() {
  static const NormalGrid grid = [] {
    NormalGrid g;
    constexpr int kPoints = 2001;
    for (int i = 1; i <= kPoints; ++i) {
      const double x = normal::quantile_oracle(static_cast<double>(i) / (kPoints + 1));
      g.x.push_back(x);
      g.phi.push_back(normal::phi_oracle(x));
    }
    return g;
  }();
  return grid;
}

double sup_gap(std::vector<double> z) {
  require(!z.empty(), ErrorKind::DomainError, "no samples");
  std::sort(z.begin(), z.end());
  const NormalGrid& g = normal_grid();
  const double n = static_cast<double>(z.size());
  double gap = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const auto count = std::upper_bound(z.begin(), z.end(), g.x[i]) - z.begin();
    gap = std::max(gap, std::abs(static_cast<double>(count) / n - g.phi[i]));
  }
  return gap;
}

BerryEsseen berry_esseen_gap(const TriangularSpec& spec, std::size_t n, std::size_t trials, std::uint64_t seed,
                             kernels::Exec exec) {
  require(trials >= 1, ErrorKind::DomainError, "need trials >= 1");
  const MaterializedSpec laws(spec, n);
  const double mean = laws.mean_sum();
  const double sn2 = laws.variance_sum();
  require(sn2 > 0.0, ErrorKind::DomainError, "s_n^2 must be positive");
  const double sn = std::sqrt(sn2);
  double beta3 = 0.0;
  if (laws.iid()) {
    const CatalogEntry& law = laws.at(1);
    beta3 = static_cast<double>(n) * central_abs_moment(law, law.moments.require_mean(), 3.0);
  } else {
    for (std::size_t k = 1; k <= n; ++k)
      beta3 += central_abs_moment(laws.at(k), laws.at(k).moments.require_mean(), 3.0);
  }

  std::vector<double> z;
  const CatalogEntry& first = laws.at(1);
  const std::vector<double> atoms =
      laws.iid() && first.is_discrete() ? first.law.atoms(first.law.lep(), first.law.uep(), 3) : std::vector<double>{};
  if (atoms.size() == 2) {
    // S_n = n a0 + (a1 - a0) B with B ~ Binomial(n, P(X = a1)).
    const double a0 = atoms[0];
    const double a1 = atoms[1];
    const CatalogEntry binom =
        catalog::make_law("binomial", {{"n", static_cast<double>(n)}, {"p", first.law.mass(a1)}});
    const double nn = static_cast<double>(n);
    z = kernels::sample(
        [&](Stream& s) {
          const double b = binom.sampler(s);
          return (nn * a0 + (a1 - a0) * b - mean) / sn;
        },
        trials, seed, exec);
  } else {
    z = kernels::run_trials(
        trials, seed,
        [&](Stream& s) {
          double sum = 0.0;
          for (std::size_t k = 1; k <= n; ++k) sum += laws.at(k).sampler(s);
          return (sum - mean) / sn;
        },
        exec);
  }
  BerryEsseen out;
  out.gap = sup_gap(std::move(z));
  out.beta3 = beta3;
  out.sn = sn;
  out.bound = 36.0 * beta3 / (sn2 * sn);
  out.slack = 1.5 / std::sqrt(static_cast<double>(trials));
  out.holds = out.gap <= out.bound + out.slack;
  return out;
}

LilResult lil_trajectory(std::size_t n_max, std::uint64_t seed, std::size_t seeds, double scale,
                         kernels::Exec exec) {
  require(static_cast<double>(n_max) >= std::exp(std::numbers::e), ErrorKind::DomainError,
          "n_max must be at least e^e so that log log n is defined");
  require(scale > 0.0 && seeds >= 1, ErrorKind::DomainError, "need scale > 0 and seeds >= 1");
  const std::size_t start = n_max >= 1000 ? 1000 : 16;
  LilResult out;
  out.running_max = kernels::run_trials(
      seeds, seed,
      [&](Stream& s) {
        double sum = 0.0;
        double best = -std::numeric_limits<double>::infinity();
        std::uint64_t word = 0;
        int left = 0;
        for (std::size_t k = 1; k <= n_max; ++k) {
          if (left == 0) {
            word = s.bits();
            left = 64;
          }
          sum += (word & 1U) ? scale : -scale;
          word >>= 1;
          --left;
          if (k < start) continue;
          const double kk = static_cast<double>(k);
          best = std::max(best, sum / std::sqrt(2.0 * scale * scale * kk * std::log(std::log(kk))));
        }
        return best;
      },
      exec);
  // Trajectory of the first seed, recomputed serially at dyadic checkpoints.
  {
    Stream s(seed, 0);
    double sum = 0.0;
    std::uint64_t word = 0;
    int left = 0;
    std::size_t next = 16;
    for (std::size_t k = 1; k <= n_max; ++k) {
      if (left == 0) {
        word = s.bits();
        left = 64;
      }
      sum += (word & 1U) ? scale : -scale;
      word >>= 1;
      --left;
      if (k == next) {
        const double kk = static_cast<double>(k);
        out.trajectory.emplace_back(kk, sum / std::sqrt(2.0 * scale * scale * kk * std::log(std::log(kk))));
        next *= 2;
      }
    }
  }
  out.in_bracket = std::all_of(out.running_max.begin(), out.running_max.end(),
                               [](double m) { return m >= 0.5 && m <= 1.3; });
  return out;
}

std::vector<double> cesaro(const std::vector<double>& x) {
  std::vector<double> out(x.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i];
    out[i] = s / static_cast<double>(i + 1);
  }
  return out;
}

std::vector<double> kronecker_weighted(const std::vector<double>& x, const std::vector<double>& b) {
  require(x.size() == b.size(), ErrorKind::ShapeMismatch, "x and b lengths differ");
  std::vector<double> out(x.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(b[i] > 0.0 && (i == 0 || b[i] >= b[i - 1]), ErrorKind::DomainError, "b must be positive nondecreasing");
    s += b[i] * x[i];
    out[i] = s / b[i];
  }
  return out;
}

ToeplitzResult toeplitz_mean(const std::vector<double>& x, const std::function<double(std::size_t, std::size_t)>& a) {
  ToeplitzResult out{std::vector<double>(x.size()), 0.0};
  for (std::size_t n = 1; n <= x.size(); ++n) {
    double t = 0.0;
    double row = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double w = a(n, k);
      t += w * x[k - 1];
      row += std::abs(w);
    }
    out.means[n - 1] = t;
    out.max_row_abs_sum = std::max(out.max_row_abs_sum, row);
  }
  return out;
}

}  // namespace probalab::limits
