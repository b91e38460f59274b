#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace probalab::dist {

using RealFn = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Countable support descriptor: atoms origin + step * k for k in [first, last].
/// step is always positive; kUnbounded marks an infinite end.
struct Lattice {
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

  double origin = 0.0;
  double step = 1.0;
  std::int64_t first = 0;
  std::int64_t last = kUnbounded;

  double at(std::int64_t k) const { return origin + step * static_cast<double>(k); }
  bool bounded_above() const { return last != kUnbounded; }
  bool bounded_below() const { return first != -kUnbounded; }
  /// Lattice index of x if x is (numerically) an atom.
  std::optional<std::int64_t> index_of(double x) const;
};

/// Moment table. Undefined moments are empty optionals, never NaN.
struct Moments {
  std::optional<double> mean;
  std::optional<double> variance;
  std::map<int, double> raw;
  std::map<int, double> abs;

  double require_mean() const;
  double require_variance() const;
  /// variance == raw(2) - mean^2 within tol whenever all three are known.
  bool consistent(double tol = 1e-9) const;
};

/// A scalar probability law: discrete part, absolutely continuous part, or a
/// finite mixture of both. The singular-continuous slot always has weight 0.
/// Values are immutable and cheap to copy (parts are shared).
class Law {
 public:
  enum class Kind { Discrete, AbsContinuous, Mixture };

  struct AcPart {
    RealFn density;
    RealFn cdf;
  };
  struct DiscretePart {
    Lattice lattice;
    RealFn mass;  // evaluated at atom values
    RealFn cdf;   // may be empty: then summed over the lattice
    std::vector<double> points;  // explicit sorted atoms; overrides the lattice when nonempty
  };

  static Law discrete(std::string name, Lattice lattice, RealFn mass, RealFn cdf = {});
  /// Finitely many atoms (strictly increasing) with their masses.
  static Law finite(std::string name, std::vector<double> points, std::vector<double> masses);
  static Law continuous(std::string name, RealFn density, RealFn cdf, double lep, double uep);
  /// weight_ac * ac + (1 - weight_ac) * disc. Throws UnsupportedComponent if a
  /// nonzero singular weight is requested.
  static Law mixture(std::string name, double weight_ac, const Law& ac, const Law& disc,
                     double weight_singular = 0.0);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double weight_ac() const { return weight_ac_; }
  double weight_singular() const { return 0.0; }
  double lep() const { return lep_; }
  double uep() const { return uep_; }

  bool has_ac() const { return ac_ != nullptr && weight_ac_ > 0.0; }
  bool has_discrete() const { return disc_ != nullptr && weight_ac_ < 1.0; }

  /// Full distribution function F(x).
  double cdf(double x) const;
  /// Left limit F(x-).
  double cdf_left(double x) const;
  /// Density of the weighted absolutely continuous part (w * f_ac).
  double density(double x) const;
  /// Mass of the weighted discrete part at x ((1 - w) * p(x)).
  double mass(double x) const;

  const AcPart* ac_part() const { return ac_.get(); }
  const DiscretePart* discrete_part() const { return disc_.get(); }

  /// Atoms in [lo, hi], ascending, at most cap of them.
  std::vector<double> atoms(double lo, double hi, std::size_t cap = 100000) const;

 private:
  Law() = default;
  double discrete_cdf(double x) const;

  Kind kind_ = Kind::AbsContinuous;
  std::string name_;
  double weight_ac_ = 1.0;
  double lep_ = -kInf;
  double uep_ = kInf;
  std::shared_ptr<const AcPart> ac_;
  std::shared_ptr<const DiscretePart> disc_;
};

struct WeightedLaw {
  double weight;
  Law law;
};

struct TailGrid {
  double abs_tol = 1e-10;
  int max_depth = 60;
  std::size_t atom_cap = 20000;
};

/// E(X) = integral over [0, uep] of P(X > t) dt for X >= 0.
double expectation_via_tail(const Law& law, const TailGrid& grid = {});

struct TailBracket {
  double lower;
  double upper;
  double sum;
  /// The series was cut at n_max while P(|X| >= n_max) > 1e-12.
  bool truncation_warning;
};

/// -1 + sum_{0 <= n <= N} P(|X| >= n) <= E|X| <= sum_{0 <= n <= N} P(|X| >= n),
/// N = min(floor(uep|X|), n_max).
TailBracket discrete_tail_sum(const Law& law, std::int64_t n_max);

/// Empirical (mean |x|^p)^(1/p); p = +inf gives max |x|.
double lp_norm(std::span<const double> samples, double p);

/// Split into (absolutely continuous, discrete) sub-laws with weights summing to 1.
std::pair<WeightedLaw, WeightedLaw> cdf_decompose(const Law& law);

/// Recombined cdf of a decomposition: w_ac F_ac(x) + w_d F_d(x).
double recombine_cdf(const std::pair<WeightedLaw, WeightedLaw>& parts, double x);

/// A point-mass law at a.
Law point_mass(double a, std::string name = "constant");

}  // namespace probalab::dist
