#include "probalab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "probalab/error.hpp"
#include "probalab/kernels.hpp"
#include "probalab/ks.hpp"
#include "probalab/quadrature.hpp"
#include "probalab/special.hpp"

namespace probalab::catalog {

using cf::CharFn;
using cf::Complex;
using dist::kInf;
using dist::Lattice;
using dist::Law;
using dist::Moments;
using std::numbers::pi;

namespace {

constexpr Complex kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// parameter handling

const LawInfo* find_info(const std::string& name);

Params resolve(const std::string& name, const Params& given) {
  const LawInfo* info = find_info(name);
  if (!info) fail(ErrorKind::UnknownLaw, "no law named '" + name + "'");
  Params out;
  for (const auto& [key, def] : info->params) out[key] = def;
  for (const auto& [key, value] : given) {
    if (!out.contains(key)) fail(ErrorKind::DomainError, name + ": unknown parameter '" + key + "'");
    out[key] = value;
  }
  return out;
}

void check(bool ok, const std::string& law, const std::string& constraint, const Params& p) {
  if (ok) return;
  std::ostringstream msg;
  msg << law << ": constraint " << constraint << " violated (";
  bool first = true;
  for (const auto& [k, v] : p) {
    msg << (first ? "" : ", ") << k << "=" << v;
    first = false;
  }
  msg << ")";
  fail(ErrorKind::DomainError, msg.str());
}

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

// ---------------------------------------------------------------------------
// discrete entries

std::shared_ptr<const DiscreteTable> build_table(const Law& law) {
  const Law::DiscretePart& d = *law.discrete_part();
  auto table = std::make_shared<DiscreteTable>();
  table->lattice = d.lattice;
  constexpr std::size_t kCap = 20'000'000;
  if (!d.points.empty()) {
    for (double p : d.points) table->cumulative.push_back(law.cdf(p));
    return table;
  }
  const Lattice& lat = d.lattice;
  double running = 0.0;
  for (std::int64_t k = lat.first; k <= lat.last; ++k) {
    double c = 0.0;
    if (d.cdf) {
      c = law.cdf(lat.at(k));
    } else {
      running += d.mass(lat.at(k));
      c = std::min(running, 1.0);
    }
    table->cumulative.push_back(c);
    if (c >= 1.0 || table->cumulative.size() >= kCap) break;
    if (!lat.bounded_above() && (1.0 - c < 1e-17 || (1.0 - c < 1e-13 && d.mass(lat.at(k)) < 1e-19))) break;
  }
  return table;
}

double atom_of(const Law& law, std::size_t i) {
  const Law::DiscretePart& d = *law.discrete_part();
  if (!d.points.empty()) return d.points[i];
  return d.lattice.at(d.lattice.first + static_cast<std::int64_t>(i));
}

double table_quantile(const Law& law, const DiscreteTable& table, double u) {
  const auto& c = table.cumulative;
  const auto it = std::lower_bound(c.begin(), c.end(), u);
  if (it != c.end()) return atom_of(law, static_cast<std::size_t>(it - c.begin()));
  // Beyond the tabulated range: keep walking the lattice.
  const Lattice& lat = table.lattice;
  std::int64_t k = lat.first + static_cast<std::int64_t>(c.size()) - 1;
  double running = c.back();
  while (running < u && k < lat.last) {
    ++k;
    running = law.cdf(lat.at(k));
    if (k - lat.first > 100'000'000) break;
  }
  return lat.at(k);
}

CatalogEntry discrete_entry(std::string name, Params params, Law law, Moments moments,
                            std::optional<CharFn> phi, std::optional<Mgf> mgf) {
  CatalogEntry e{std::move(name), std::move(params), std::move(law), std::move(phi), std::move(mgf),
                 std::move(moments), {}, {}, nullptr};
  e.table = build_table(e.law);
  auto table = e.table;
  Law l = e.law;
  e.sampler = [l, table](Stream& s) { return table_quantile(l, *table, s.uniform()); };
  e.center = e.moments.mean.value_or(0.0);
  e.spread = e.moments.variance ? std::max(std::sqrt(*e.moments.variance), 1e-3) : 1.0;
  return e;
}

Moments two_moments(double mean, double var) {
  Moments m;
  m.mean = mean;
  m.variance = var;
  m.raw[1] = mean;
  m.raw[2] = var + mean * mean;
  return m;
}

CatalogEntry make_constant(const Params& p) {
  const double a = p.at("a");
  Law law = dist::point_mass(a);
  Moments m = two_moments(a, 0.0);
  for (int k = 1; k <= 4; ++k) {
    m.raw[k] = std::pow(a, k);
    m.abs[k] = std::pow(std::abs(a), k);
  }
  CharFn phi{[a](double u) { return std::exp(kI * (a * u)); }, "constant", false};
  Mgf mgf{[a](double u) { return std::exp(a * u); }, -kInf, kInf};
  CatalogEntry e = discrete_entry("constant", p, law, m, phi, mgf);
  e.sampler = [a](Stream&) { return a; };
  e.closed_quantile = [a](double) { return a; };
  return e;
}

CatalogEntry make_uniform_discrete(const Params& p) {
  const double n = p.at("n");
  check(is_integer(n) && n >= 1, "uniform_discrete", "n integer >= 1", p);
  Law law = Law::discrete(
      "uniform_discrete", Lattice{0.0, 1.0, 1, static_cast<std::int64_t>(n)}, [n](double) { return 1.0 / n; },
      [n](double x) { return std::clamp(std::floor(x), 0.0, n) / n; });
  Moments m = two_moments((n + 1.0) / 2.0, (n * n - 1.0) / 12.0);
  CharFn phi{[n](double u) {
               Complex sum{0.0, 0.0};
               for (int j = 1; j <= static_cast<int>(n); ++j) sum += std::exp(kI * (j * u));
               return sum / n;
             },
             "uniform_discrete", false};
  return discrete_entry("uniform_discrete", p, law, m, phi, std::nullopt);
}

CatalogEntry make_bernoulli(const Params& p) {
  const double pr = p.at("p");
  check(pr > 0.0 && pr < 1.0, "bernoulli", "0 < p < 1", p);
  const double q = 1.0 - pr;
  Law law = Law::discrete(
      "bernoulli", Lattice{0.0, 1.0, 0, 1}, [pr, q](double x) { return x > 0.5 ? pr : q; },
      [q](double x) { return x < 0.0 ? 0.0 : (x < 1.0 ? q : 1.0); });
  Moments m = two_moments(pr, pr * q);
  for (int k = 1; k <= 4; ++k) m.raw[k] = m.abs[k] = pr;
  CharFn phi{[pr, q](double u) { return q + pr * std::exp(kI * u); }, "bernoulli", false};
  Mgf mgf{[pr, q](double u) { return q + pr * std::exp(u); }, -kInf, kInf};
  return discrete_entry("bernoulli", p, law, m, phi, mgf);
}

CatalogEntry make_rademacher(const Params& p) {
  Law law = Law::discrete(
      "rademacher", Lattice{-1.0, 2.0, 0, 1}, [](double) { return 0.5; },
      [](double x) { return x < -1.0 ? 0.0 : (x < 1.0 ? 0.5 : 1.0); });
  Moments m = two_moments(0.0, 1.0);
  m.raw[3] = 0.0;
  m.raw[4] = 1.0;
  for (int k = 1; k <= 4; ++k) m.abs[k] = 1.0;
  CharFn phi{[](double u) { return Complex{std::cos(u), 0.0}; }, "rademacher", false};
  Mgf mgf{[](double u) { return std::cosh(u); }, -kInf, kInf};
  CatalogEntry e = discrete_entry("rademacher", p, law, m, phi, mgf);
  e.sampler = [](Stream& s) { return s.rademacher(); };
  return e;
}

CatalogEntry make_binomial(const Params& p) {
  const double n = p.at("n");
  const double pr = p.at("p");
  check(is_integer(n) && n >= 1, "binomial", "n integer >= 1", p);
  check(pr > 0.0 && pr < 1.0, "binomial", "0 < p < 1", p);
  const double q = 1.0 - pr;
  Law law = Law::discrete("binomial", Lattice{0.0, 1.0, 0, static_cast<std::int64_t>(n)}, [n, pr, q](double k) {
    return std::exp(special::log_binomial(n, k) + k * std::log(pr) + (n - k) * std::log(q));
  });
  Moments m = two_moments(n * pr, n * pr * q);
  CharFn phi{[n, pr, q](double u) { return std::pow(q + pr * std::exp(kI * u), n); }, "binomial", false};
  Mgf mgf{[n, pr, q](double u) { return std::pow(q + pr * std::exp(u), n); }, -kInf, kInf};
  return discrete_entry("binomial", p, law, m, phi, mgf);
}

CatalogEntry make_geometric(const Params& p) {
  const double pr = p.at("p");
  check(pr > 0.0 && pr < 1.0, "geometric", "0 < p < 1", p);
  const double q = 1.0 - pr;
  Law law = Law::discrete(
      "geometric", Lattice{0.0, 1.0, 0, Lattice::kUnbounded}, [pr, q](double k) { return pr * std::pow(q, k); },
      [q](double x) { return x < 0.0 ? 0.0 : 1.0 - std::pow(q, std::floor(x) + 1.0); });
  Moments m = two_moments(q / pr, q / (pr * pr));
  CharFn phi{[pr, q](double u) { return pr / (1.0 - q * std::exp(kI * u)); }, "geometric", false};
  Mgf mgf{[pr, q](double u) { return pr / (1.0 - q * std::exp(u)); }, -kInf, -std::log(q)};
  return discrete_entry("geometric", p, law, m, phi, mgf);
}

CatalogEntry make_negative_binomial(const Params& p) {
  const double r = p.at("r");
  const double pr = p.at("p");
  check(is_integer(r) && r >= 1, "negative_binomial", "r integer >= 1", p);
  check(pr > 0.0 && pr < 1.0, "negative_binomial", "0 < p < 1", p);
  const double q = 1.0 - pr;
  // Number of trials up to the r-th success: support {r, r+1, ...}.
  Law law = Law::discrete("negative_binomial", Lattice{0.0, 1.0, static_cast<std::int64_t>(r), Lattice::kUnbounded},
                          [r, pr, q](double k) {
                            return std::exp(special::log_binomial(k - 1.0, r - 1.0) + r * std::log(pr) +
                                            (k - r) * std::log(q));
                          });
  Moments m = two_moments(r / pr, r * q / (pr * pr));
  CharFn phi{[r, pr, q](double u) {
               const Complex e = std::exp(kI * u);
               return std::pow(pr * e / (1.0 - q * e), r);
             },
             "negative_binomial", false};
  Mgf mgf{[r, pr, q](double u) { return std::pow(pr * std::exp(u) / (1.0 - q * std::exp(u)), r); }, -kInf,
          -std::log(q)};
  return discrete_entry("negative_binomial", p, law, m, phi, mgf);
}

CatalogEntry make_poisson(const Params& p) {
  const double lambda = p.at("lambda");
  check(lambda > 0.0, "poisson", "lambda > 0", p);
  Law law = Law::discrete(
      "poisson", Lattice{0.0, 1.0, 0, Lattice::kUnbounded},
      [lambda](double k) { return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0)); },
      [lambda](double x) { return x < 0.0 ? 0.0 : special::gamma_q(std::floor(x) + 1.0, lambda); });
  Moments m = two_moments(lambda, lambda);
  CharFn phi{[lambda](double u) { return std::exp(lambda * (std::exp(kI * u) - 1.0)); }, "poisson", false};
  Mgf mgf{[lambda](double u) { return std::exp(lambda * (std::exp(u) - 1.0)); }, -kInf, kInf};
  return discrete_entry("poisson", p, law, m, phi, mgf);
}

CatalogEntry make_hypergeometric(const Params& p) {
  const double N = p.at("N");
  const double M = p.at("M");
  const double n = p.at("n");
  check(is_integer(N) && is_integer(M) && is_integer(n), "hypergeometric", "N, M, n integers", p);
  check(n >= 1 && n <= N, "hypergeometric", "1 <= n <= N", p);
  check(M >= 0 && M <= N, "hypergeometric", "0 <= M <= N", p);
  const auto lo = static_cast<std::int64_t>(std::max(0.0, n - (N - M)));
  const auto hi = static_cast<std::int64_t>(std::min(n, M));
  Law law = Law::discrete("hypergeometric", Lattice{0.0, 1.0, lo, hi}, [N, M, n](double k) {
    return std::exp(special::log_binomial(M, k) + special::log_binomial(N - M, n - k) - special::log_binomial(N, n));
  });
  const double var = N > 1 ? n * M * (N - M) * (N - n) / (N * N * (N - 1.0)) : 0.0;
  Moments m = two_moments(n * M / N, var);
  return discrete_entry("hypergeometric", p, law, m, std::nullopt, std::nullopt);
}

CatalogEntry make_logarithmic(const Params& p) {
  const double pr = p.at("p");
  check(pr > 0.0 && pr < 1.0, "logarithmic", "0 < p < 1", p);
  const double q = 1.0 - pr;
  const double lp = std::log(pr);
  Law law = Law::discrete("logarithmic", Lattice{0.0, 1.0, 1, Lattice::kUnbounded},
                          [q, lp](double k) { return -std::pow(q, k) / (k * lp); });
  Moments m = two_moments(-q / (pr * lp), -q * (q + lp) / (pr * pr * lp * lp));
  return discrete_entry("logarithmic", p, law, m, std::nullopt, std::nullopt);
}

// ---------------------------------------------------------------------------
// continuous entries

CatalogEntry continuous_entry(std::string name, Params params, Law law, Moments moments, std::optional<CharFn> phi,
                              std::optional<Mgf> mgf, Sampler sampler, std::function<double(double)> quantile_fn,
                              double center, double spread) {
  CatalogEntry e{std::move(name), std::move(params), std::move(law), std::move(phi), std::move(mgf),
                 std::move(moments), std::move(sampler), std::move(quantile_fn), nullptr};
  e.center = center;
  e.spread = spread;
  if (!e.sampler && e.closed_quantile) {
    auto qf = e.closed_quantile;
    e.sampler = [qf](Stream& s) { return qf(s.uniform()); };
  }
  return e;
}

CatalogEntry make_uniform(const Params& p) {
  const double a = p.at("a");
  const double b = p.at("b");
  check(a < b, "uniform", "a < b", p);
  Law law = Law::continuous(
      "uniform", [a, b](double x) { return (x >= a && x <= b) ? 1.0 / (b - a) : 0.0; },
      [a, b](double x) { return std::clamp((x - a) / (b - a), 0.0, 1.0); }, a, b);
  Moments m = two_moments((a + b) / 2.0, (b - a) * (b - a) / 12.0);
  for (int k = 1; k <= 4; ++k) m.raw[k] = (std::pow(b, k + 1) - std::pow(a, k + 1)) / ((k + 1) * (b - a));
  CharFn phi{[a, b](double u) {
               if (std::abs(u) < 1e-12) return Complex{1.0, 0.0};
               return (std::exp(kI * (b * u)) - std::exp(kI * (a * u))) / (kI * u * (b - a));
             },
             "uniform", false};
  Mgf mgf{[a, b](double u) { return std::abs(u) < 1e-12 ? 1.0 : (std::exp(b * u) - std::exp(a * u)) / (u * (b - a)); },
          -kInf, kInf};
  return continuous_entry("uniform", p, law, m, phi, mgf, {}, [a, b](double u) { return a + u * (b - a); },
                          (a + b) / 2.0, (b - a) / 2.0);
}

CatalogEntry make_exponential(const Params& p) {
  const double lambda = p.at("lambda");
  check(lambda > 0.0, "exponential", "lambda > 0", p);
  Law law = Law::continuous(
      "exponential", [lambda](double x) { return x >= 0.0 ? lambda * std::exp(-lambda * x) : 0.0; },
      [lambda](double x) { return x >= 0.0 ? -std::expm1(-lambda * x) : 0.0; }, 0.0, kInf);
  Moments m = two_moments(1.0 / lambda, 1.0 / (lambda * lambda));
  double fact = 1.0;
  for (int k = 1; k <= 4; ++k) {
    fact *= k;
    m.raw[k] = m.abs[k] = fact / std::pow(lambda, k);
  }
  CharFn phi{[lambda](double u) { return 1.0 / (1.0 - kI * (u / lambda)); }, "exponential", false};
  Mgf mgf{[lambda](double u) { return 1.0 / (1.0 - u / lambda); }, -kInf, lambda};
  return continuous_entry(
      "exponential", p, law, m, phi, mgf, [lambda](Stream& s) { return s.exponential(lambda); },
      [lambda](double u) { return -std::log1p(-u) / lambda; }, 1.0 / lambda, 1.0 / lambda);
}

CatalogEntry gamma_entry(std::string name, Params params, double a, double b) {
  Law law = Law::continuous(
      name,
      [a, b](double x) {
        if (x < 0.0) return 0.0;
        if (x == 0.0) return a == 1.0 ? b : (a < 1.0 ? kInf : 0.0);
        return std::exp(a * std::log(b) + (a - 1.0) * std::log(x) - b * x - std::lgamma(a));
      },
      [a, b](double x) { return special::gamma_p(a, b * x); }, 0.0, kInf);
  Moments m = two_moments(a / b, a / (b * b));
  double prod = 1.0;
  for (int k = 1; k <= 4; ++k) {
    prod *= (a + k - 1.0) / b;
    m.raw[k] = m.abs[k] = prod;
  }
  CharFn phi{[a, b](double u) { return std::pow(1.0 - kI * (u / b), -a); }, name, a > 1.0};
  Mgf mgf{[a, b](double u) { return std::pow(1.0 - u / b, -a); }, -kInf, b};
  return continuous_entry(
      std::move(name), std::move(params), law, m, phi, mgf, [a, b](Stream& s) { return s.gamma(a, b); }, {}, a / b,
      std::sqrt(a) / b);
}

CatalogEntry make_gamma(const Params& p) {
  const double a = p.at("a");
  const double b = p.at("b");
  check(a > 0.0 && b > 0.0, "gamma", "a > 0, b > 0", p);
  return gamma_entry("gamma", p, a, b);
}

CatalogEntry make_chi_square(const Params& p) {
  const double d = p.at("d");
  check(d >= 1.0, "chi_square", "d >= 1", p);
  CatalogEntry e = gamma_entry("chi_square", p, d / 2.0, 0.5);
  e.cf = CharFn{[d](double u) { return std::pow(1.0 - 2.0 * kI * u, -d / 2.0); }, "chi_square", d > 2.0};
  e.mgf = Mgf{[d](double u) { return std::pow(1.0 - 2.0 * u, -d / 2.0); }, -kInf, 0.5};
  return e;
}

CatalogEntry make_symmetrized_exponential(const std::string& name, const Params& p, double lambda) {
  check(lambda > 0.0, name, "rate > 0", p);
  Law law = Law::continuous(
      name, [lambda](double x) { return 0.5 * lambda * std::exp(-lambda * std::abs(x)); },
      [lambda](double x) { return x < 0.0 ? 0.5 * std::exp(lambda * x) : 1.0 - 0.5 * std::exp(-lambda * x); }, -kInf,
      kInf);
  Moments m = two_moments(0.0, 2.0 / (lambda * lambda));
  m.raw[3] = 0.0;
  m.raw[4] = 24.0 / std::pow(lambda, 4);
  m.abs[1] = 1.0 / lambda;
  m.abs[2] = 2.0 / (lambda * lambda);
  m.abs[3] = 6.0 / std::pow(lambda, 3);
  m.abs[4] = m.raw[4];
  CharFn phi{[lambda](double u) { return Complex{lambda * lambda / (lambda * lambda + u * u), 0.0}; }, name, true};
  Mgf mgf{[lambda](double u) { return lambda * lambda / (lambda * lambda - u * u); }, -lambda, lambda};
  return continuous_entry(
      name, p, law, m, phi, mgf, [lambda](Stream& s) { return s.exponential(lambda) - s.exponential(lambda); },
      [lambda](double u) { return u < 0.5 ? std::log(2.0 * u) / lambda : -std::log(2.0 * (1.0 - u)) / lambda; }, 0.0,
      std::sqrt(2.0) / lambda);
}

CatalogEntry make_beta(const Params& p) {
  const double a = p.at("a");
  const double b = p.at("b");
  check(a > 0.0 && b > 0.0, "beta", "a > 0, b > 0", p);
  const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  Law law = Law::continuous(
      "beta",
      [a, b, lbeta](double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lbeta);
      },
      [a, b](double x) { return special::ibeta(a, b, x); }, 0.0, 1.0);
  const double s = a + b;
  Moments m = two_moments(a / s, a * b / (s * s * (s + 1.0)));
  double prod = 1.0;
  for (int k = 1; k <= 4; ++k) {
    prod *= (a + k - 1.0) / (s + k - 1.0);
    m.raw[k] = m.abs[k] = prod;
  }
  CatalogEntry e = continuous_entry(
      "beta", p, law, m, std::nullopt, std::nullopt,
      [a, b](Stream& st) {
        const double x = st.gamma(a);
        const double y = st.gamma(b);
        return x / (x + y);
      },
      {}, a / s, std::sqrt(*m.variance));
  e.density_below_uep = [a, b, lbeta](double d) {
    if (d <= 0.0 || d >= 1.0) return 0.0;
    return std::exp((a - 1.0) * std::log1p(-d) + (b - 1.0) * std::log(d) - lbeta);
  };
  return e;
}

CatalogEntry make_pareto(const Params& p) {
  const double a = p.at("a");
  const double alpha = p.at("alpha");
  check(a > 0.0 && alpha > 0.0, "pareto", "a > 0, alpha > 0", p);
  Law law = Law::continuous(
      "pareto", [a, alpha](double x) { return x > a ? alpha * std::pow(a, alpha) * std::pow(x, -alpha - 1.0) : 0.0; },
      [a, alpha](double x) { return x > a ? 1.0 - std::pow(a / x, alpha) : 0.0; }, a, kInf);
  Moments m;
  if (alpha > 1.0) {
    m.mean = alpha * a / (alpha - 1.0);
    m.raw[1] = *m.mean;
  }
  if (alpha > 2.0) {
    m.variance = a * a * alpha / ((alpha - 1.0) * (alpha - 1.0) * (alpha - 2.0));
    m.raw[2] = alpha * a * a / (alpha - 2.0);
  }
  return continuous_entry("pareto", p, law, m, std::nullopt, std::nullopt, {},
                          [a, alpha](double u) { return a * std::pow(1.0 - u, -1.0 / alpha); },
                          m.mean.value_or(2.0 * a), m.variance ? std::sqrt(*m.variance) : a);
}

CatalogEntry make_cauchy(const Params& p) {
  const double a = p.at("a");
  const double lambda = p.at("lambda");
  check(lambda > 0.0, "cauchy", "lambda > 0", p);
  Law law = Law::continuous(
      "cauchy", [a, lambda](double x) { return lambda / (pi * (lambda * lambda + (x - a) * (x - a))); },
      [a, lambda](double x) { return 0.5 + std::atan((x - a) / lambda) / pi; }, -kInf, kInf);
  CharFn phi{[a, lambda](double u) { return std::exp(kI * (u * a) - lambda * std::abs(u)); }, "cauchy", true};
  // Mean and variance do not exist.
  return continuous_entry("cauchy", p, law, Moments{}, phi, std::nullopt, {},
                          [a, lambda](double u) { return a + lambda * std::tan(pi * (u - 0.5)); }, a, lambda);
}

CatalogEntry make_logistic(const Params& p) {
  const double a = p.at("a");
  const double b = p.at("b");
  check(b > 0.0, "logistic", "b > 0", p);
  Law law = Law::continuous(
      "logistic",
      [a, b](double x) {
        const double e = std::exp(-std::abs(x - a) / b);
        return e / (b * (1.0 + e) * (1.0 + e));
      },
      [a, b](double x) { return 1.0 / (1.0 + std::exp(-(x - a) / b)); }, -kInf, kInf);
  Moments m = two_moments(a, b * b * pi * pi / 3.0);
  return continuous_entry("logistic", p, law, m, std::nullopt, std::nullopt, {},
                          [a, b](double u) { return a + b * std::log(u / (1.0 - u)); }, a, b);
}

CatalogEntry make_weibull(const Params& p) {
  const double a = p.at("a");
  const double b = p.at("b");
  check(a > 0.0 && b > 0.0, "weibull", "a > 0, b > 0", p);
  Law law = Law::continuous(
      "weibull",
      [a, b](double x) { return x > 0.0 ? a * b * std::pow(x, b - 1.0) * std::exp(-a * std::pow(x, b)) : 0.0; },
      [a, b](double x) { return x > 0.0 ? -std::expm1(-a * std::pow(x, b)) : 0.0; }, 0.0, kInf);
  const double g1 = std::tgamma(1.0 + 1.0 / b);
  const double g2 = std::tgamma(1.0 + 2.0 / b);
  Moments m = two_moments(std::pow(a, -1.0 / b) * g1, std::pow(a, -2.0 / b) * (g2 - g1 * g1));
  return continuous_entry("weibull", p, law, m, std::nullopt, std::nullopt, {},
                          [a, b](double u) { return std::pow(-std::log1p(-u) / a, 1.0 / b); }, *m.mean,
                          std::sqrt(*m.variance));
}

CatalogEntry make_gumbel(const Params& p) {
  const double a = p.at("a");
  const double b = p.at("b");
  check(b > 0.0, "gumbel", "b > 0", p);
  Law law = Law::continuous(
      "gumbel",
      [a, b](double x) {
        const double z = (x - a) / b;
        return std::exp(-z - std::exp(-z)) / b;
      },
      [a, b](double x) { return std::exp(-std::exp(-(x - a) / b)); }, -kInf, kInf);
  Moments m = two_moments(a + special::kEulerGamma * b, pi * pi * b * b / 6.0);
  return continuous_entry("gumbel", p, law, m, std::nullopt, std::nullopt, {},
                          [a, b](double u) { return a - b * std::log(-std::log(u)); }, *m.mean, b);
}

CatalogEntry make_gaussian(const std::string& name, const Params& p) {
  const double mu = p.at("m");
  const double sigma = p.at("sigma");
  check(sigma > 0.0, name, "sigma > 0", p);
  Law law = Law::continuous(
      name,
      [mu, sigma](double x) {
        const double z = (x - mu) / sigma;
        return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * pi));
      },
      [mu, sigma](double x) { return special::normal_cdf((x - mu) / sigma); }, -kInf, kInf);
  Moments m = two_moments(mu, sigma * sigma);
  m.raw[3] = mu * mu * mu + 3.0 * mu * sigma * sigma;
  m.raw[4] = std::pow(mu, 4) + 6.0 * mu * mu * sigma * sigma + 3.0 * std::pow(sigma, 4);
  if (mu == 0.0) {
    m.abs[1] = sigma * std::sqrt(2.0 / pi);
    m.abs[2] = sigma * sigma;
    m.abs[3] = 2.0 * std::pow(sigma, 3) * std::sqrt(2.0 / pi);
    m.abs[4] = 3.0 * std::pow(sigma, 4);
  }
  CharFn phi{[mu, sigma](double u) { return std::exp(kI * (u * mu) - 0.5 * sigma * sigma * u * u); }, name, true};
  Mgf mgf{[mu, sigma](double u) { return std::exp(u * mu + 0.5 * sigma * sigma * u * u); }, -kInf, kInf};
  return continuous_entry(
      name, p, law, m, phi, mgf, [mu, sigma](Stream& s) { return mu + sigma * s.normal(); }, {}, mu, sigma);
}

CatalogEntry make_inverse_gamma(const Params& p) {
  const double alpha = p.at("alpha");
  const double beta = p.at("beta");
  check(alpha > 0.0 && beta > 0.0, "inverse_gamma", "alpha > 0, beta > 0", p);
  Law law = Law::continuous(
      "inverse_gamma",
      [alpha, beta](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp(alpha * std::log(beta) - std::lgamma(alpha) - (alpha + 1.0) * std::log(x) - beta / x);
      },
      [alpha, beta](double x) { return x <= 0.0 ? 0.0 : special::gamma_q(alpha, beta / x); }, 0.0, kInf);
  Moments m;
  if (alpha > 1.0) {
    m.mean = beta / (alpha - 1.0);
    m.raw[1] = *m.mean;
  }
  if (alpha > 2.0) {
    m.variance = beta * beta / ((alpha - 1.0) * (alpha - 1.0) * (alpha - 2.0));
    m.raw[2] = beta * beta / ((alpha - 1.0) * (alpha - 2.0));
  }
  return continuous_entry(
      "inverse_gamma", p, law, m, std::nullopt, std::nullopt,
      [alpha, beta](Stream& s) { return 1.0 / s.gamma(alpha, beta); }, {},
      m.mean.value_or(beta / (alpha + 1.0)), m.variance ? std::sqrt(*m.variance) : beta / (alpha + 1.0));
}

// ---------------------------------------------------------------------------
// normal variance mixtures (density evaluation only)

void check_gig_domain(double a, double b, double c, const std::string& who, const Params& p) {
  if (a < 0.0) check(b > 0.0 && c >= 0.0, who, "a < 0 requires b > 0 and c >= 0", p);
  if (a == 0.0) check(b > 0.0 && c > 0.0, who, "a = 0 requires b > 0 and c > 0", p);
  if (a > 0.0) check(b >= 0.0 && c > 0.0, who, "a > 0 requires b >= 0 and c > 0", p);
}

// E W^k for W ~ Gig(a, b, c), k = 1, 2, when it exists.
std::optional<double> gig_raw_moment(double a, double b, double c, int k) {
  if (b > 0.0 && c > 0.0) {
    const double w = std::sqrt(b * c);
    return std::pow(b / c, k / 2.0) * special::bessel_k(a + k, w) / special::bessel_k(a, w);
  }
  if (b == 0.0) {  // gamma(a, c / 2)
    double prod = 1.0;
    for (int j = 0; j < k; ++j) prod *= (a + j) / (c / 2.0);
    return prod;
  }
  // c == 0: inverse gamma(-a, b / 2)
  const double alpha = -a;
  if (alpha <= k) return std::nullopt;
  double prod = 1.0;
  for (int j = 1; j <= k; ++j) prod *= (b / 2.0) / (alpha - j);
  return prod;
}

std::function<double(double)> gig_density(double a, double b, double c) {
  if (b == 0.0) {
    const double rate = c / 2.0;
    return [a, rate](double x) {
      return x <= 0.0 ? 0.0 : std::exp(a * std::log(rate) + (a - 1.0) * std::log(x) - rate * x - std::lgamma(a));
    };
  }
  if (c == 0.0) {
    const double alpha = -a;
    const double beta = b / 2.0;
    return [alpha, beta](double x) {
      return x <= 0.0 ? 0.0
                      : std::exp(alpha * std::log(beta) - std::lgamma(alpha) - (alpha + 1.0) * std::log(x) - beta / x);
    };
  }
  const double w = std::sqrt(b * c);
  const double log_norm = 0.5 * a * std::log(c / b) - std::log(2.0 * special::bessel_k(a, w));
  return [a, b, c, log_norm](double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(log_norm + (a - 1.0) * std::log(x) - 0.5 * (c * x + b / x));
  };
}

CatalogEntry numeric_cdf_entry(std::string name, Params params, std::function<double(double)> pdf, double lep,
                               double uep, Moments m, double center, double spread) {
  auto cdf = [pdf, lep, center, spread](double x) {
    if (x <= lep) return 0.0;
    quad::Options opt;
    opt.abs_tol = 1e-11;
    opt.scale = spread;
    const double lo = std::isfinite(lep) ? lep : center - 8.0 * spread;
    double mass = 0.0;
    if (!std::isfinite(lep)) mass += quad::integrate(pdf, -kInf, lo, opt).value;
    mass += quad::integrate(pdf, lo, x, opt).value;
    return std::clamp(mass, 0.0, 1.0);
  };
  Law law = Law::continuous(name, std::move(pdf), cdf, lep, uep);
  return continuous_entry(std::move(name), std::move(params), law, std::move(m), std::nullopt, std::nullopt, {}, {},
                          center, spread);
}

CatalogEntry make_gig(const Params& p) {
  const double a = p.at("a");
  const double b = p.at("b");
  const double c = p.at("c");
  check_gig_domain(a, b, c, "gig", p);
  Moments m;
  if (auto m1 = gig_raw_moment(a, b, c, 1)) {
    m.mean = *m1;
    m.raw[1] = *m1;
    if (auto m2 = gig_raw_moment(a, b, c, 2)) {
      m.raw[2] = *m2;
      m.variance = std::max(0.0, *m2 - *m1 * *m1);
    }
  }
  const double center = m.mean.value_or(1.0);
  const double spread = m.variance ? std::max(std::sqrt(*m.variance), 1e-3) : center;
  return numeric_cdf_entry("gig", p, gig_density(a, b, c), 0.0, kInf, m, center, spread);
}

// X = mu + gamma W + sigma sqrt(W) Z with W ~ Gig(a, b, c); b, c > 0.
CatalogEntry gh_entry(std::string name, const Params& p, double mu, double sigma, double skew, double a, double b,
                      double c) {
  check(sigma > 0.0, name, "sigma > 0", p);
  check(b > 0.0 && c > 0.0, name, "b > 0 and c > 0", p);
  const double s2 = sigma * sigma;
  const double psi_bar = c + skew * skew / s2;
  const double log_norm = -0.5 * a * std::log(b * c) + a * std::log(c) + (0.5 - a) * std::log(psi_bar) -
                          0.5 * std::log(2.0 * pi) - std::log(sigma) - std::log(special::bessel_k(a, std::sqrt(b * c)));
  auto pdf = [mu, s2, skew, a, b, psi_bar, log_norm](double x) {
    const double q = (x - mu) * (x - mu) / s2;
    const double arg = std::sqrt((b + q) * psi_bar);
    return std::exp(log_norm + std::log(special::bessel_k(a - 0.5, arg)) + (x - mu) * skew / s2 -
                    (0.5 - a) * std::log(arg));
  };
  Moments m;
  const auto w1 = gig_raw_moment(a, b, c, 1);
  const auto w2 = gig_raw_moment(a, b, c, 2);
  if (w1) {
    m.mean = mu + skew * *w1;
    m.raw[1] = *m.mean;
    if (w2) {
      m.variance = s2 * *w1 + skew * skew * (*w2 - *w1 * *w1);
      m.raw[2] = *m.variance + *m.mean * *m.mean;
    }
  }
  const double spread = m.variance ? std::sqrt(*m.variance) : sigma;
  return numeric_cdf_entry(std::move(name), p, pdf, -kInf, kInf, m, m.mean.value_or(mu), spread);
}

CatalogEntry make_student_or_fisher(const std::string& name, const Params& p) {
  if (name == "student") return transform_student(p.at("n"));
  return transform_fisher(p.at("n"), p.at("m"));
}

// ---------------------------------------------------------------------------
// registry

const std::vector<LawInfo>& infos() {
  static const std::vector<LawInfo> table = {
      {"constant", {{"a", 0.0}}, "point mass at a"},
      {"uniform_discrete", {{"n", 6.0}}, "uniform on {1, ..., n}"},
      {"bernoulli", {{"p", 0.5}}, "P(X=1)=p"},
      {"rademacher", {}, "+1/-1 with probability 1/2"},
      {"binomial", {{"n", 10.0}, {"p", 0.5}}, "sum of n Bernoulli(p)"},
      {"geometric", {{"p", 0.5}}, "P(X=k)=p q^k on {0,1,...}"},
      {"negative_binomial", {{"r", 2.0}, {"p", 0.5}}, "trials up to the r-th success, support {r, r+1, ...}"},
      {"poisson", {{"lambda", 1.0}}, "Poisson(lambda)"},
      {"hypergeometric", {{"N", 20.0}, {"M", 7.0}, {"n", 5.0}}, "draws without replacement, M marked among N"},
      {"logarithmic", {{"p", 0.5}}, "P(X=k)=-q^k/(k log p), k>=1"},
      {"uniform", {{"a", 0.0}, {"b", 1.0}}, "uniform on [a, b]"},
      {"exponential", {{"lambda", 1.0}}, "rate lambda"},
      {"gamma", {{"a", 1.0}, {"b", 1.0}}, "shape a, RATE b"},
      {"symmetrized_exponential", {{"lambda", 1.0}}, "difference of two independent Exp(lambda)"},
      {"double_exponential", {{"b", 1.0}}, "density (b/2) exp(-b|x|)"},
      {"laplace", {{"lambda", 1.0}}, "alias of symmetrized_exponential"},
      {"beta", {{"a", 2.0}, {"b", 2.0}}, "Beta(a, b) on (0, 1)"},
      {"pareto", {{"a", 1.0}, {"alpha", 3.0}}, "density alpha a^alpha x^(-alpha-1) on (a, inf)"},
      {"cauchy", {{"a", 0.0}, {"lambda", 1.0}}, "location a, scale lambda"},
      {"logistic", {{"a", 0.0}, {"b", 1.0}}, "location a, scale b"},
      {"weibull", {{"a", 1.0}, {"b", 2.0}}, "density a b x^(b-1) exp(-a x^b)"},
      {"gumbel", {{"a", 0.0}, {"b", 1.0}}, "cdf exp(-exp(-(x-a)/b))"},
      {"gaussian", {{"m", 0.0}, {"sigma", 1.0}}, "N(m, sigma^2)"},
      {"normal", {{"m", 0.0}, {"sigma", 1.0}}, "alias of gaussian"},
      {"chi_square", {{"d", 1.0}}, "gamma(d/2, 1/2)"},
      {"inverse_gamma", {{"alpha", 3.0}, {"beta", 1.0}}, "1/Y with Y ~ gamma(alpha, beta)"},
      {"gig", {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}}, "generalized inverse Gaussian (density only)"},
      {"sgh", {{"mu", 0.0}, {"sigma", 1.0}, {"a", 1.0}, {"b", 1.0}, {"c", 1.0}},
       "symmetric generalized hyperbolic (density only)"},
      {"gh",
       {{"mu", 0.0}, {"sigma", 1.0}, {"gamma", 0.5}, {"a", 1.0}, {"b", 1.0}, {"c", 1.0}},
       "generalized hyperbolic (density only)"},
      {"student", {{"n", 5.0}}, "t(n)"},
      {"fisher", {{"n", 3.0}, {"m", 6.0}}, "F(n, m)"},
  };
  return table;
}

const LawInfo* find_info(const std::string& name) {
  for (const LawInfo& info : infos())
    if (info.name == name) return &info;
  return nullptr;
}

}  // namespace

const std::vector<LawInfo>& registry() { return infos(); }

CatalogEntry make_law(const std::string& name, const Params& params) {
  const Params p = resolve(name, params);
  if (name == "constant") return make_constant(p);
  if (name == "uniform_discrete") return make_uniform_discrete(p);
  if (name == "bernoulli") return make_bernoulli(p);
  if (name == "rademacher") return make_rademacher(p);
  if (name == "binomial") return make_binomial(p);
  if (name == "geometric") return make_geometric(p);
  if (name == "negative_binomial") return make_negative_binomial(p);
  if (name == "poisson") return make_poisson(p);
  if (name == "hypergeometric") return make_hypergeometric(p);
  if (name == "logarithmic") return make_logarithmic(p);
  if (name == "uniform") return make_uniform(p);
  if (name == "exponential") return make_exponential(p);
  if (name == "gamma") return make_gamma(p);
  if (name == "chi_square") return make_chi_square(p);
  if (name == "symmetrized_exponential" || name == "laplace") return make_symmetrized_exponential(name, p, p.at("lambda"));
  if (name == "double_exponential") return make_symmetrized_exponential(name, p, p.at("b"));
  if (name == "beta") return make_beta(p);
  if (name == "pareto") return make_pareto(p);
  if (name == "cauchy") return make_cauchy(p);
  if (name == "logistic") return make_logistic(p);
  if (name == "weibull") return make_weibull(p);
  if (name == "gumbel") return make_gumbel(p);
  if (name == "gaussian" || name == "normal") return make_gaussian(name, p);
  if (name == "inverse_gamma") return make_inverse_gamma(p);
  if (name == "gig") return make_gig(p);
  if (name == "sgh") return gh_entry("sgh", p, p.at("mu"), p.at("sigma"), 0.0, p.at("a"), p.at("b"), p.at("c"));
  if (name == "gh")
    return gh_entry("gh", p, p.at("mu"), p.at("sigma"), p.at("gamma"), p.at("a"), p.at("b"), p.at("c"));
  if (name == "student" || name == "fisher") return make_student_or_fisher(name, p);
  fail(ErrorKind::UnknownLaw, "no law named '" + name + "'");
}

CatalogEntry transform_student(double n) {
  const Params p{{"n", n}};
  check(n >= 1.0, "student", "n >= 1", p);
  const double log_norm = std::lgamma((n + 1.0) / 2.0) - std::lgamma(n / 2.0) - 0.5 * std::log(n * pi);
  Law law = Law::continuous(
      "student", [n, log_norm](double x) { return std::exp(log_norm - (n + 1.0) / 2.0 * std::log1p(x * x / n)); },
      [n](double x) {
        const double tail = 0.5 * special::ibeta(n / 2.0, 0.5, n / (n + x * x));
        return x >= 0.0 ? 1.0 - tail : tail;
      },
      -kInf, kInf);
  Moments m;
  if (n > 1.0) {
    m.mean = 0.0;
    m.raw[1] = 0.0;
  }
  if (n > 2.0) {
    m.variance = n / (n - 2.0);
    m.raw[2] = *m.variance;
  }
  const CatalogEntry normal = make_law("gaussian");
  const CatalogEntry chi = make_law("chi_square", {{"d", n}});
  Sampler draw = [n, z = normal.sampler, c = chi.sampler](Stream& s) {
    const double num = z(s);
    return std::sqrt(n) * num / std::sqrt(c(s));
  };
  return continuous_entry("student", p, law, m, std::nullopt, std::nullopt, draw, {}, 0.0,
                          m.variance ? std::sqrt(*m.variance) : 1.0);
}

CatalogEntry transform_fisher(double n, double m_dof) {
  const Params p{{"n", n}, {"m", m_dof}};
  check(n >= 1.0 && m_dof >= 1.0, "fisher", "n >= 1, m >= 1", p);
  const double log_norm = 0.5 * n * std::log(n) + 0.5 * m_dof * std::log(m_dof) + std::lgamma((n + m_dof) / 2.0) -
                          std::lgamma(n / 2.0) - std::lgamma(m_dof / 2.0);
  Law law = Law::continuous(
      "fisher",
      [n, m_dof, log_norm](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp(log_norm + (n / 2.0 - 1.0) * std::log(x) - (n + m_dof) / 2.0 * std::log(m_dof + n * x));
      },
      [n, m_dof](double x) { return x <= 0.0 ? 0.0 : special::ibeta(n / 2.0, m_dof / 2.0, n * x / (n * x + m_dof)); },
      0.0, kInf);
  Moments mo;
  if (m_dof > 2.0) {
    mo.mean = m_dof / (m_dof - 2.0);
    mo.raw[1] = *mo.mean;
  }
  if (m_dof > 4.0) {
    mo.variance =
        2.0 * m_dof * m_dof * (n + m_dof - 2.0) / (n * (m_dof - 2.0) * (m_dof - 2.0) * (m_dof - 4.0));
    mo.raw[2] = *mo.variance + *mo.mean * *mo.mean;
  }
  const CatalogEntry chi_n = make_law("chi_square", {{"d", n}});
  const CatalogEntry chi_m = make_law("chi_square", {{"d", m_dof}});
  Sampler draw = [n, m_dof, a = chi_n.sampler, b = chi_m.sampler](Stream& s) {
    const double num = a(s) / n;
    return num / (b(s) / m_dof);
  };
  return continuous_entry("fisher", p, law, mo, std::nullopt, std::nullopt, draw, {}, mo.mean.value_or(1.0),
                          mo.variance ? std::sqrt(*mo.variance) : 1.0);
}

CatalogEntry affine(const CatalogEntry& base, double scale, double shift) {
  if (scale == 0.0) return make_law("constant", {{"a", shift}});
  const std::string name = base.name + "_affine";
  const Law src = base.law;
  std::optional<cf::CharFn> phi;
  if (base.cf) phi = cf::cf_affine(*base.cf, scale, shift);
  std::optional<Mgf> mgf;
  if (base.mgf) {
    const Mgf bm = *base.mgf;
    double lo = bm.lo / scale;
    double hi = bm.hi / scale;
    if (scale < 0.0) std::swap(lo, hi);
    mgf = Mgf{[bm, scale, shift](double u) { return std::exp(shift * u) * bm.eval(scale * u); }, lo, hi};
  }
  Moments m;
  if (base.moments.mean) {
    m.mean = scale * *base.moments.mean + shift;
    m.raw[1] = *m.mean;
  }
  if (base.moments.variance) {
    m.variance = scale * scale * *base.moments.variance;
    if (m.mean) m.raw[2] = *m.variance + *m.mean * *m.mean;
  }
  if (shift == 0.0)
    for (const auto& [k, v] : base.moments.abs) m.abs[k] = std::pow(std::abs(scale), k) * v;

  const auto cdf = [src, scale, shift](double y) {
    const double x = (y - shift) / scale;
    return scale > 0.0 ? src.cdf(x) : 1.0 - src.cdf_left(x);
  };
  const Sampler draw = [s = base.sampler, scale, shift](Stream& st) { return scale * s(st) + shift; };
  double lep = scale * base.law.lep() + shift;
  double uep = scale * base.law.uep() + shift;
  if (scale < 0.0) std::swap(lep, uep);

  if (base.is_discrete()) {
    const Law::DiscretePart& d = *src.discrete_part();
    Law law = [&]() {
      if (!d.points.empty()) {
        std::vector<double> pts;
        std::vector<double> ms;
        for (double x : d.points) {
          pts.push_back(scale * x + shift);
          ms.push_back(src.mass(x));
        }
        if (scale < 0.0) {
          std::reverse(pts.begin(), pts.end());
          std::reverse(ms.begin(), ms.end());
        }
        return Law::finite(name, pts, ms);
      }
      Lattice lat = d.lattice;
      Lattice out{scale * lat.origin + shift, std::abs(scale) * lat.step, lat.first, lat.last};
      if (scale < 0.0) {
        out.first = lat.bounded_above() ? -lat.last : -Lattice::kUnbounded;
        out.last = lat.bounded_below() ? -lat.first : Lattice::kUnbounded;
      }
      return Law::discrete(name, out, [src, scale, shift](double y) { return src.mass((y - shift) / scale); }, cdf);
    }();
    CatalogEntry e = discrete_entry(name, base.params, law, m, phi, mgf);
    if (scale > 0.0 && base.sampler) e.sampler = draw;
    return e;
  }
  Law law = Law::continuous(
      name, [src, scale, shift](double y) { return src.density((y - shift) / scale) / std::abs(scale); }, cdf, lep,
      uep);
  std::function<double(double)> qf;
  if (base.closed_quantile) {
    const auto bq = base.closed_quantile;
    qf = [bq, scale, shift](double u) { return scale * bq(scale > 0.0 ? u : 1.0 - u) + shift; };
  }
  CatalogEntry e = continuous_entry(name, base.params, law, m, phi, mgf, base.sampler ? draw : Sampler{}, qf,
                                    scale * base.center + shift, std::abs(scale) * base.spread);
  return e;
}

CatalogEntry discrete_table(std::string name, const std::vector<double>& atoms, const std::vector<double>& masses) {
  Law law = Law::finite(name, atoms, masses);
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    mean += masses[i] * atoms[i];
    second += masses[i] * atoms[i] * atoms[i];
  }
  Moments m = two_moments(mean, std::max(0.0, second - mean * mean));
  for (int k = 1; k <= 4; ++k) {
    double raw = 0.0;
    double ab = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      raw += masses[i] * std::pow(atoms[i], k);
      ab += masses[i] * std::pow(std::abs(atoms[i]), k);
    }
    m.raw[k] = raw;
    m.abs[k] = ab;
  }
  m.raw[1] = mean;
  m.raw[2] = second;
  std::vector<double> a = atoms;
  std::vector<double> w = masses;
  CharFn phi{[a, w](double u) {
               Complex sum{0.0, 0.0};
               for (std::size_t i = 0; i < a.size(); ++i) sum += w[i] * std::exp(kI * (u * a[i]));
               return sum;
             },
             name, false};
  Mgf mgf{[a, w](double u) {
            double sum = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) sum += w[i] * std::exp(u * a[i]);
            return sum;
          },
          -kInf, kInf};
  return discrete_entry(std::move(name), {}, law, m, phi, mgf);
}

double quantile(const CatalogEntry& entry, double u) {
  require(u > 0.0 && u < 1.0, ErrorKind::DomainError, "quantile level must lie in (0, 1)");
  if (entry.closed_quantile) return entry.closed_quantile(u);
  if (entry.table) return table_quantile(entry.law, *entry.table, u);
  const Law& law = entry.law;
  // Bracket geometrically outward from the center, then bisect to 1e-12.
  double lo = entry.center;
  double hi = entry.center;
  double step = std::max(entry.spread, 1e-6);
  while (law.cdf(hi) < u) {
    hi = std::min(entry.center + step, law.uep());
    if (hi == law.uep()) break;
    step *= 2.0;
  }
  step = std::max(entry.spread, 1e-6);
  while (lo > law.lep() && law.cdf(lo) >= u) {
    lo = std::max(entry.center - step, law.lep());
    step *= 2.0;
  }
  if (lo == law.lep() && law.cdf(lo) >= u) return lo;
  return quad::bisect_first_true([&](double x) { return law.cdf(x) >= u; }, lo, hi, 1e-12);
}

std::vector<double> sample(const CatalogEntry& entry, std::size_t n, std::uint64_t seed) {
  require(n >= 1, ErrorKind::DomainError, "sample count must be >= 1");
  if (!entry.sampler) fail(ErrorKind::DomainError, "law '" + entry.name + "' has no sampler");
  return kernels::sample(entry.sampler, n, seed);
}

double expect(const CatalogEntry& entry, const std::function<double(double)>& g, double abs_tol) {
  const Law& law = entry.law;
  if (entry.is_discrete()) {
    const Law::DiscretePart& d = *law.discrete_part();
    double sum = 0.0;
    if (!d.points.empty()) {
      for (double x : d.points) sum += g(x) * law.mass(x);
      return sum;
    }
    const Lattice& lat = d.lattice;
    require(lat.bounded_below(), ErrorKind::DomainError, "summation needs a lattice bounded below");
    double cumulative = 0.0;
    for (std::int64_t k = lat.first; k <= lat.last; ++k) {
      const double x = lat.at(k);
      const double w = d.mass(x);
      cumulative += w;
      sum += g(x) * w;
      if (!lat.bounded_above() && 1.0 - cumulative < 1e-18 && std::abs(g(x) * w) < 1e-18) break;
      if (k - lat.first > 50'000'000) break;
    }
    return sum;
  }
  quad::Options opt;
  opt.abs_tol = abs_tol;
  opt.scale = entry.spread;
  opt.center = entry.center;
  opt.soften_endpoints = true;
  const auto f = [&](double x) { return g(x) * law.density(x); };
  const double lo = law.lep();
  const double hi = law.uep();
  const auto run = [&](const quad::Options& o) {
    if (!entry.density_below_uep || !std::isfinite(lo) || !std::isfinite(hi)) return quad::integrate(f, lo, hi, o);
    // upper half in the distance-to-endpoint coordinate
    const double mid = 0.5 * (lo + hi);
    quad::Options half = o;
    half.abs_tol = 0.5 * o.abs_tol;
    quad::Result r1 = quad::integrate(f, lo, mid, half);
    const quad::Result r2 = quad::integrate(
        [&](double d) { return g(hi - d) * entry.density_below_uep(d); }, 0.0, hi - mid, half);
    r1.value += r2.value;
    r1.evals += r2.evals;
    r1.converged = r1.converged && r2.converged;
    return r1;
  };
  quad::Result r = run(opt);
  // Large expectations: the tolerance is read relative to the magnitude.
  if (!r.converged && std::isfinite(r.value) && std::abs(r.value) > 1.0) {
    opt.abs_tol = abs_tol * std::abs(r.value);
    r = run(opt);
  }
  if (!r.converged) {
    std::string what = entry.name;
    for (const auto& [k, v] : entry.params) what += " " + k + "=" + std::to_string(v);
    fail(ErrorKind::QuadratureFailure, "expectation quadrature did not converge for " + what);
  }
  return r.value;
}

double total_mass(const CatalogEntry& entry) {
  return expect(entry, [](double) { return 1.0; });
}

GammaSumReport gamma_sum_check(double a1, double a2, double b, std::size_t n, std::uint64_t seed) {
  require(a1 > 0.0 && a2 > 0.0 && b > 0.0, ErrorKind::DomainError, "gamma_sum_check needs positive parameters");
  const CatalogEntry x = make_law("gamma", {{"a", a1}, {"b", b}});
  const CatalogEntry y = make_law("gamma", {{"a", a2}, {"b", b}});
  const CatalogEntry target = make_law("gamma", {{"a", a1 + a2}, {"b", b}});
  const std::vector<double> xs = sample(x, n, seed);
  const std::vector<double> ys = sample(y, n, mix64(seed) ^ 0x5bd1e995ULL);
  std::vector<double> sums(n);
  for (std::size_t i = 0; i < n; ++i) sums[i] = xs[i] + ys[i];
  const ks::Test t = ks::one_sample(sums, [&](double v) { return target.law.cdf(v); }, 0.01);
  return {t.statistic, t.p_value, t.passed, n};
}

}  // namespace probalab::catalog
