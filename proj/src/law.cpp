#include "probalab/law.hpp"

#include <algorithm>
#include <cmath>

#include "probalab/error.hpp"
#include "probalab/quadrature.hpp"

namespace probalab::dist {

std::optional<std::int64_t> Lattice::index_of(double x) const {
  const double r = (x - origin) / step;
  if (!std::isfinite(r)) return std::nullopt;
  const double k = std::round(r);
  if (std::abs(r - k) > 1e-9 * std::max(1.0, std::abs(r))) return std::nullopt;
  const auto ki = static_cast<std::int64_t>(k);
  if (ki < first || ki > last) return std::nullopt;
  return ki;
}

double Moments::require_mean() const {
  if (!mean) fail(ErrorKind::UndefinedMoment, "mean is undefined for this law");
  return *mean;
}

double Moments::require_variance() const {
  if (!variance) fail(ErrorKind::UndefinedMoment, "variance is undefined for this law");
  return *variance;
}

bool Moments::consistent(double tol) const {
  const auto it = raw.find(2);
  if (!mean || !variance || it == raw.end()) return true;
  return std::abs(*variance - (it->second - *mean * *mean)) <= tol * std::max(1.0, it->second);
}

Law Law::discrete(std::string name, Lattice lattice, RealFn mass, RealFn cdf) {
  Law law;
  law.kind_ = Kind::Discrete;
  law.name_ = std::move(name);
  law.weight_ac_ = 0.0;
  law.lep_ = lattice.bounded_below() ? lattice.at(lattice.first) : -kInf;
  law.uep_ = lattice.bounded_above() ? lattice.at(lattice.last) : kInf;
  law.disc_ = std::make_shared<const DiscretePart>(DiscretePart{lattice, std::move(mass), std::move(cdf), {}});
  return law;
}

Law Law::finite(std::string name, std::vector<double> points, std::vector<double> masses) {
  require(!points.empty() && points.size() == masses.size(), ErrorKind::ShapeMismatch,
          "finite law needs one mass per atom");
  for (std::size_t i = 1; i < points.size(); ++i)
    require(points[i] > points[i - 1], ErrorKind::DomainError, "atoms must be strictly increasing");
  double total = 0.0;
  for (double m : masses) {
    require(m >= 0.0, ErrorKind::DomainError, "masses must be nonnegative");
    total += m;
  }
  require(std::abs(total - 1.0) < 1e-9, ErrorKind::DomainError, "masses must sum to 1");
  auto pts = std::make_shared<const std::vector<double>>(points);
  auto ms = std::make_shared<const std::vector<double>>(std::move(masses));
  auto mass = [pts, ms](double x) {
    const auto it = std::lower_bound(pts->begin(), pts->end(), x);
    if (it == pts->end() || *it != x) return 0.0;
    return (*ms)[static_cast<std::size_t>(it - pts->begin())];
  };
  auto cdf = [pts, ms](double x) {
    const auto it = std::upper_bound(pts->begin(), pts->end(), x);
    double sum = 0.0;
    for (auto p = pts->begin(); p != it; ++p) sum += (*ms)[static_cast<std::size_t>(p - pts->begin())];
    return std::min(sum, 1.0);
  };
  Law law;
  law.kind_ = Kind::Discrete;
  law.name_ = std::move(name);
  law.weight_ac_ = 0.0;
  law.lep_ = points.front();
  law.uep_ = points.back();
  law.disc_ = std::make_shared<const DiscretePart>(
      DiscretePart{Lattice{0.0, 1.0, 0, static_cast<std::int64_t>(points.size()) - 1}, mass, cdf, std::move(points)});
  return law;
}

Law Law::continuous(std::string name, RealFn density, RealFn cdf, double lep, double uep) {
  Law law;
  law.kind_ = Kind::AbsContinuous;
  law.name_ = std::move(name);
  law.weight_ac_ = 1.0;
  law.lep_ = lep;
  law.uep_ = uep;
  law.ac_ = std::make_shared<const AcPart>(AcPart{std::move(density), std::move(cdf)});
  return law;
}

Law Law::mixture(std::string name, double weight_ac, const Law& ac, const Law& disc, double weight_singular) {
  require(weight_singular == 0.0, ErrorKind::UnsupportedComponent,
          "singular-continuous components cannot be constructed");
  require(weight_ac >= 0.0 && weight_ac <= 1.0, ErrorKind::DomainError, "mixture weight must lie in [0,1]");
  require(ac.kind() == Kind::AbsContinuous, ErrorKind::DomainError, "first mixture component must be absolutely continuous");
  require(disc.kind() == Kind::Discrete, ErrorKind::DomainError, "second mixture component must be discrete");
  Law law;
  law.kind_ = Kind::Mixture;
  law.name_ = std::move(name);
  law.weight_ac_ = weight_ac;
  law.lep_ = std::min(ac.lep(), disc.lep());
  law.uep_ = std::max(ac.uep(), disc.uep());
  law.ac_ = ac.ac_;
  law.disc_ = disc.disc_;
  return law;
}

double Law::discrete_cdf(double x) const {
  const DiscretePart& d = *disc_;
  if (d.cdf) return d.cdf(x);
  const Lattice& lat = d.lattice;
  require(lat.bounded_below(), ErrorKind::DomainError, "lattice unbounded below needs an explicit cdf");
  if (x < lat.at(lat.first)) return 0.0;
  const double r = (x - lat.origin) / lat.step;
  auto hi = static_cast<std::int64_t>(std::floor(r + 1e-9 * std::max(1.0, std::abs(r))));
  if (lat.bounded_above()) hi = std::min(hi, lat.last);
  double sum = 0.0;
  for (std::int64_t k = lat.first; k <= hi; ++k) {
    sum += d.mass(lat.at(k));
    if (sum >= 1.0 || k - lat.first > 50'000'000) break;
  }
  return std::min(sum, 1.0);
}

double Law::cdf(double x) const {
  double f = 0.0;
  if (ac_ && weight_ac_ > 0.0) f += weight_ac_ * ac_->cdf(x);
  if (disc_ && weight_ac_ < 1.0) f += (1.0 - weight_ac_) * discrete_cdf(x);
  return std::clamp(f, 0.0, 1.0);
}

double Law::cdf_left(double x) const { return std::max(0.0, cdf(x) - mass(x)); }

double Law::density(double x) const {
  if (!ac_ || weight_ac_ == 0.0) return 0.0;
  return weight_ac_ * ac_->density(x);
}

double Law::mass(double x) const {
  if (!disc_ || weight_ac_ == 1.0) return 0.0;
  if (disc_->points.empty() && !disc_->lattice.index_of(x)) return 0.0;
  return (1.0 - weight_ac_) * disc_->mass(x);
}

std::vector<double> Law::atoms(double lo, double hi, std::size_t cap) const {
  std::vector<double> out;
  if (!disc_) return out;
  if (!disc_->points.empty()) {
    for (double p : disc_->points)
      if (p >= lo && p <= hi && out.size() < cap) out.push_back(p);
    return out;
  }
  const Lattice& lat = disc_->lattice;
  std::int64_t k_hi = lat.last;
  if (std::isfinite(hi)) k_hi = std::min(k_hi, static_cast<std::int64_t>(std::floor((hi - lat.origin) / lat.step)));
  std::int64_t k_lo = lat.first;
  if (std::isfinite(lo)) {
    k_lo = std::max(k_lo, static_cast<std::int64_t>(std::ceil((lo - lat.origin) / lat.step)));
  } else if (!lat.bounded_below()) {
    require(k_hi != Lattice::kUnbounded, ErrorKind::DomainError, "cannot enumerate a two-sided infinite lattice");
    k_lo = k_hi - static_cast<std::int64_t>(cap) + 1;
  }
  for (std::int64_t k = k_lo; k <= k_hi && out.size() < cap; ++k) out.push_back(lat.at(k));
  return out;
}

double expectation_via_tail(const Law& law, const TailGrid& grid) {
  require(law.lep() >= 0.0, ErrorKind::NonNegativityViolation,
          "law '" + law.name() + "' has support below 0");
  if (law.kind() == Law::Kind::Discrete) {
    // Step tail: sum of gap * P(X > atom), tails as backward sums of masses
    // so they keep their precision far out.
    std::vector<double> atoms;
    std::vector<double> masses;
    double cumulative = 0.0;
    for (double a : law.atoms(0.0, law.uep(), grid.atom_cap)) {
      const double m = law.mass(a);
      atoms.push_back(a);
      masses.push_back(m);
      cumulative += m;
      if (cumulative > 1.0 - 1e-15 && m * std::max(1.0, a) < 1e-18) break;
    }
    if (atoms.empty()) return 0.0;
    if (atoms.size() == grid.atom_cap && cumulative < 1.0 - 1e-12)
      fail(ErrorKind::DivergentTail, "tail of '" + law.name() + "' not exhausted within the atom cap");
    double above = 0.0;
    double sum = 0.0;
    for (std::size_t i = atoms.size() - 1; i > 0; --i) {
      above += masses[i];
      sum += (atoms[i] - atoms[i - 1]) * above;
    }
    return sum + atoms.front();
  }
  const auto tail = [&law](double t) { return 1.0 - law.cdf(t); };
  std::vector<double> breaks;
  if (law.has_discrete()) {
    for (double a : law.atoms(0.0, law.uep(), grid.atom_cap)) {
      breaks.push_back(a);
      if (tail(a) < 1e-18) break;
    }
  }
  quad::Options opt;
  opt.abs_tol = grid.abs_tol;
  opt.max_depth = grid.max_depth;
  const quad::Result r = quad::integrate_piecewise(tail, 0.0, law.uep(), breaks, opt);
  if (!r.converged || !std::isfinite(r.value))
    fail(ErrorKind::DivergentTail, "tail quadrature did not converge for '" + law.name() + "'");
  return r.value;
}

TailBracket discrete_tail_sum(const Law& law, std::int64_t n_max) {
  require(n_max >= 0, ErrorKind::DomainError, "n_max must be nonnegative");
  const double uep_abs = std::max(std::abs(law.lep()), std::abs(law.uep()));
  std::int64_t top = n_max;
  if (std::isfinite(uep_abs)) top = std::min<std::int64_t>(top, static_cast<std::int64_t>(std::floor(uep_abs)));
  // P(|X| >= n) = 1 - F(n-) + F(-n)
  const auto abs_tail = [&law](double n) {
    if (n <= 0.0) return 1.0;
    return std::clamp(1.0 - law.cdf_left(n) + law.cdf(-n), 0.0, 1.0);
  };
  double sum = 0.0;
  for (std::int64_t n = 0; n <= top; ++n) sum += abs_tail(static_cast<double>(n));
  const bool limited = !std::isfinite(uep_abs) || std::floor(uep_abs) > static_cast<double>(n_max);
  const bool truncated = limited && abs_tail(static_cast<double>(n_max)) > 1e-12;
  return {sum - 1.0, sum, sum, truncated};
}

double lp_norm(std::span<const double> samples, double p) {
  require(!samples.empty(), ErrorKind::DomainError, "lp_norm needs a nonempty sample");
  require(p >= 1.0, ErrorKind::InvalidOrder, "order p must be >= 1");
  double top = 0.0;
  for (double x : samples) top = std::max(top, std::abs(x));
  if (std::isinf(p) || top == 0.0) return top;
  double acc = 0.0;
  for (double x : samples) acc += std::pow(std::abs(x) / top, p);
  return top * std::pow(acc / static_cast<double>(samples.size()), 1.0 / p);
}

namespace {
Law null_ac() {
  return Law::continuous("null-ac", [](double) { return 0.0; }, [](double) { return 0.0; }, 0.0, 0.0);
}
Law null_discrete() {
  return Law::discrete("null-discrete", Lattice{0.0, 1.0, 0, 0}, [](double) { return 0.0; }, [](double) { return 0.0; });
}
}  // namespace

std::pair<WeightedLaw, WeightedLaw> cdf_decompose(const Law& law) {
  switch (law.kind()) {
    case Law::Kind::Discrete:
      return {{0.0, null_ac()}, {1.0, law}};
    case Law::Kind::AbsContinuous:
      return {{1.0, law}, {0.0, null_discrete()}};
    case Law::Kind::Mixture:
      break;
  }
  const Law::AcPart& ac = *law.ac_part();
  const Law::DiscretePart& d = *law.discrete_part();
  Law ac_law = Law::continuous(law.name() + ".ac", ac.density, ac.cdf, law.lep(), law.uep());
  Law d_law = Law::discrete(law.name() + ".discrete", d.lattice, d.mass, d.cdf);
  if (!d.points.empty()) {
    std::vector<double> masses;
    for (double p : d.points) masses.push_back(d.mass(p));
    d_law = Law::finite(law.name() + ".discrete", d.points, std::move(masses));
  }
  return {{law.weight_ac(), std::move(ac_law)}, {1.0 - law.weight_ac(), std::move(d_law)}};
}

double recombine_cdf(const std::pair<WeightedLaw, WeightedLaw>& parts, double x) {
  return parts.first.weight * parts.first.law.cdf(x) + parts.second.weight * parts.second.law.cdf(x);
}

Law point_mass(double a, std::string name) {
  return Law::discrete(std::move(name), Lattice{a, 1.0, 0, 0}, [](double) { return 1.0; },
                       [a](double x) { return x >= a ? 1.0 : 0.0; });
}

}  // namespace probalab::dist
