#include "probalab/processes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "probalab/catalog.hpp"
#include "probalab/error.hpp"
#include "probalab/gaussian_vector.hpp"

namespace probalab::process {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNudge = 1e-12;

std::string tuple_str(std::span<const double> t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}
}  // namespace

double gen_inverse(const Cdf& g, double u, double lo, double hi) {
  require(u > 0.0 && u < 1.0, ErrorKind::DomainError, "gen_inverse needs 0 < u < 1");
  require(lo < hi, ErrorKind::DomainError, "empty bracket");
  for (int i = 0; g(lo) >= u; ++i) {
    require(i < 1100, ErrorKind::ConvergenceFailure, "no lower bracket for gen_inverse");
    lo -= std::max(1.0, hi - lo);
  }
  for (int i = 0; g(hi) < u; ++i) {
    require(i < 1100, ErrorKind::ConvergenceFailure, "no upper bracket for gen_inverse");
    hi += std::max(1.0, hi - lo);
  }
  // invariant: g(lo) < u <= g(hi)
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (g(mid) >= u) hi = mid;
    else lo = mid;
  }
  return hi;
}

InverseCheck inverse_lemma_check(const Cdf& g, std::span<const double> x_probes, int dyadic_level) {
  InverseCheck out{kInf, -kInf, true};
  const int m = 1 << dyadic_level;
  for (int i = 1; i < m; ++i) {
    const double u = static_cast<double>(i) / m;
    out.worst_a = std::min(out.worst_a, g(gen_inverse(g, u)) - u);
  }
  for (double x : x_probes) {
    const double gx = g(x);
    if (gx <= 0.0 || gx >= 1.0) continue;
    out.worst_b = std::max(out.worst_b, gen_inverse(g, gx) - x);
  }
  out.holds = out.worst_a >= 0.0 && out.worst_b <= 1e-12;
  return out;
}

JointCdf sklar_copula(JointCdf joint, Cdf f1, Cdf f2) {
  const auto inv = [](const Cdf& f, double s) {
    const double t = s + kNudge;
    if (t >= 1.0) return kInf;
    if (t <= 0.0) return -kInf;
    return gen_inverse(f, t);
  };
  return [joint = std::move(joint), f1 = std::move(f1), f2 = std::move(f2), inv](double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    return joint(inv(f1, u), inv(f2, v));
  };
}

CopulaCheck copula_check(const JointCdf& copula, const JointCdf& joint, const Cdf& f1, const Cdf& f2,
                         std::span<const double> x_grid, int s_points) {
  require(s_points >= 2, ErrorKind::DomainError, "need at least two grid points");
  CopulaCheck out{0.0, 0.0};
  for (int i = 0; i < s_points; ++i) {
    const double s = static_cast<double>(i) / (s_points - 1);
    out.margin_error = std::max({out.margin_error, std::abs(copula(s, 1.0) - s), std::abs(copula(1.0, s) - s)});
  }
  for (double a : x_grid)
    for (double b : x_grid)
      out.reconstruction_error = std::max(out.reconstruction_error, std::abs(joint(a, b) - copula(f1(a), f2(b))));
  return out;
}

void FiniteDimFamily::add(std::span<const double> times, std::vector<double> mean, const Matrix& cov) {
  const std::size_t k = times.size();
  require(k >= 1 && mean.size() == k && cov.rows() == k && cov.cols() == k, ErrorKind::DomainError,
          "tuple, mean and covariance sizes differ");
  Entry e;
  e.order.resize(k);
  std::iota(e.order.begin(), e.order.end(), std::size_t{0});
  std::stable_sort(e.order.begin(), e.order.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
  e.times.resize(k);
  e.mean.resize(k);
  e.cov = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    e.times[i] = times[e.order[i]];
    e.mean[i] = mean[e.order[i]];
    for (std::size_t j = 0; j < k; ++j) e.cov(i, j) = cov(e.order[i], e.order[j]);
    require(i == 0 || e.times[i] > e.times[i - 1], ErrorKind::DomainError, "repeated time in tuple");
  }
  entries_.push_back(std::move(e));
}

FiniteDimFamily FiniteDimFamily::from_functions(const std::function<double(double)>& mean_fn,
                                                const std::function<double(double, double)>& cov_fn,
                                                const std::vector<std::vector<double>>& tuples) {
  FiniteDimFamily f;
  for (const auto& t : tuples) {
    std::vector<double> m(t.size());
    Matrix c(t.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      m[i] = mean_fn(t[i]);
      for (std::size_t j = 0; j < t.size(); ++j) c(i, j) = cov_fn(t[i], t[j]);
    }
    f.add(t, std::move(m), c);
  }
  return f;
}

CoherenceReport coherence_check(const FiniteDimFamily& family) {
  CoherenceReport out;
  const auto& es = family.entries();
  for (std::size_t a = 0; a < es.size(); ++a) {
    for (std::size_t b = 0; b < es.size(); ++b) {
      if (a == b) continue;
      const auto& u = es[a];
      const auto& s = es[b];
      if (u.times.size() > s.times.size()) continue;
      // Same-size pairs are the permutation condition; count them once.
      if (u.times.size() == s.times.size() && a > b) continue;
      std::vector<std::size_t> pos;
      for (double t : u.times) {
        const auto it = std::lower_bound(s.times.begin(), s.times.end(), t);
        if (it == s.times.end() || *it != t) break;
        pos.push_back(static_cast<std::size_t>(it - s.times.begin()));
      }
      if (pos.size() != u.times.size()) continue;
      ++out.pairs_checked;
      double gap = 0.0;
      for (std::size_t i = 0; i < pos.size(); ++i) {
        gap = std::max(gap, std::abs(u.mean[i] - s.mean[pos[i]]));
        for (std::size_t j = 0; j < pos.size(); ++j) gap = std::max(gap, std::abs(u.cov(i, j) - s.cov(pos[i], pos[j])));
      }
      out.max_gap = std::max(out.max_gap, gap);
      if (gap > 1e-12)
        fail(ErrorKind::IncoherentFamily,
             "law on " + tuple_str(u.times) + " is not the marginal of the law on " + tuple_str(s.times));
    }
  }
  return out;
}

std::vector<double> column(const Matrix& m, std::size_t j) {
  std::vector<double> c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
  return c;
}

namespace {
void check_grid(std::span<const double> grid, bool allow_zero) {
  require(!grid.empty(), ErrorKind::DomainError, "empty time grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(std::isfinite(grid[i]) && (allow_zero ? grid[i] >= 0.0 : grid[i] > 0.0), ErrorKind::DomainError,
            "grid times must be finite and positive");
    require(i == 0 || grid[i] > grid[i - 1], ErrorKind::DomainError, "grid must be strictly increasing");
  }
}
}  // namespace

PoissonPaths poisson_process(double theta, std::span<const double> grid, std::size_t n_paths, std::uint64_t seed,
                             kernels::Exec exec, std::size_t max_arrivals) {
  require(theta > 0.0 && std::isfinite(theta), ErrorKind::DomainError, "theta must be positive");
  check_grid(grid, true);
  const double horizon = grid.back();
  require(horizon > 0.0, ErrorKind::DomainError, "horizon must be positive");
  const std::size_t k = grid.size();
  const auto chunk = static_cast<std::size_t>(std::max(1.0, std::ceil(2.0 * theta * horizon)));

  PoissonPaths out;
  out.paths.times.assign(grid.begin(), grid.end());
  out.paths.values = Matrix(n_paths, k);
  out.paths.generator = "poisson(theta=" + std::to_string(theta) + ")";
  std::vector<double> gap_sum(n_paths);
  std::vector<std::size_t> count(n_paths);
  std::vector<std::uint8_t> saturated(n_paths);

  kernels::for_blocks(
      n_paths, 1, seed,
      [&](Stream& s, std::size_t p, std::size_t) {
        std::vector<double> gaps;
        double z = 0.0;
        std::size_t used = 0;
        std::size_t arrivals = 0;
        std::size_t col = 0;
        double sum = 0.0;
        while (true) {
          if (used == gaps.size()) {
            if (gaps.size() >= max_arrivals) {
              saturated[p] = 1;
              return;
            }
            const std::size_t grow = std::min(chunk, max_arrivals - gaps.size());
            for (std::size_t i = 0; i < grow; ++i) gaps.push_back(s.exponential(theta));
          }
          const double next = z + gaps[used++];
          while (col < k && grid[col] < next) out.paths.values(p, col++) = static_cast<double>(arrivals);
          if (col == k) break;
          z = next;
          ++arrivals;
        }
        for (double g : gaps) sum += g;
        gap_sum[p] = sum;
        count[p] = gaps.size();
      },
      exec);
  require(std::none_of(saturated.begin(), saturated.end(), [](std::uint8_t x) { return x != 0; }),
          ErrorKind::SaturationError, "a Poisson path exceeded the arrival cap");
  double total = 0.0;
  std::size_t drawn = 0;
  for (std::size_t p = 0; p < n_paths; ++p) {
    total += gap_sum[p];
    drawn += count[p];
  }
  out.gaps = drawn;
  out.mean_inter_arrival = drawn > 0 ? total / static_cast<double>(drawn) : 0.0;
  return out;
}

double poisson_total_variation(const PathSample& s, std::size_t col, double mean) {
  require(col < s.values.cols() && s.values.rows() > 0, ErrorKind::DomainError, "bad column");
  std::map<long, std::size_t> freq;
  for (std::size_t i = 0; i < s.values.rows(); ++i) ++freq[std::lround(s.values(i, col))];
  const auto law = catalog::make_law("poisson", {{"lambda", mean}});
  const double n = static_cast<double>(s.values.rows());
  // sum over seen values of |f - p| plus the Poisson mass never seen
  double seen_mass = 0.0;
  double l1 = 0.0;
  for (const auto& [v, c] : freq) {
    const double p = law.law.mass(static_cast<double>(v));
    seen_mass += p;
    l1 += std::abs(static_cast<double>(c) / n - p);
  }
  l1 += std::max(0.0, 1.0 - seen_mass);
  return 0.5 * l1;
}

PathSample brownian_motion(std::span<const double> grid, std::size_t n_paths, std::uint64_t seed,
                           kernels::Exec exec) {
  check_grid(grid, false);
  const std::size_t k = grid.size();
  std::vector<double> sd(k);
  for (std::size_t i = 0; i < k; ++i) sd[i] = std::sqrt(grid[i] - (i ? grid[i - 1] : 0.0));
  PathSample out{std::vector<double>(grid.begin(), grid.end()), Matrix(n_paths, k), "brownian"};
  kernels::for_blocks(
      n_paths, 256, seed,
      [&](Stream& s, std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
          double b = 0.0;
          for (std::size_t i = 0; i < k; ++i) {
            b += sd[i] * s.normal();
            out.values(p, i) = b;
          }
        }
      },
      exec);
  return out;
}

PathSample gaussian_process(const std::function<double(double)>& mean_fn,
                            const std::function<double(double, double)>& cov_fn, std::span<const double> grid,
                            std::size_t n_paths, std::uint64_t seed, kernels::Exec exec) {
  require(!grid.empty(), ErrorKind::DomainError, "empty time grid");
  const std::size_t k = grid.size();
  std::vector<double> m(k);
  Matrix c(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    m[i] = mean_fn(grid[i]);
    for (std::size_t j = 0; j < k; ++j) c(i, j) = cov_fn(grid[i], grid[j]);
  }
  const gauss::GaussianVector gv(std::move(m), linalg::SymMatrix(c));
  return {std::vector<double>(grid.begin(), grid.end()), gv.sample(n_paths, seed, exec), "gaussian_process"};
}

}  // namespace probalab::process
