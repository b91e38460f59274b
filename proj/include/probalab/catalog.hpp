#pragma once

// Named probability laws with closed forms wired in.
//
// Gamma convention: gamma(a, b) has RATE b, density b^a x^(a-1) e^(-bx) / Gamma(a),
// mean a / b. Authors who write gamma(a, b) with scale b mean our gamma(a, 1/b).
// Exponential(lambda) is gamma(1, lambda); chi_square(d) is gamma(d/2, 1/2).

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "probalab/charfn.hpp"
#include "probalab/law.hpp"
#include "probalab/random.hpp"

namespace probalab::catalog {

using Params = std::map<std::string, double>;
using Sampler = std::function<double(Stream&)>;

struct Mgf {
  std::function<double(double)> eval;
  double lo;  // open domain (lo, hi)
  double hi;
};

/// Cumulative mass table for inverse-transform sampling of discrete laws.
struct DiscreteTable {
  dist::Lattice lattice;
  std::vector<double> cumulative;  // cumulative[i] = P(X <= atom(first + i))
};

struct CatalogEntry {
  std::string name;
  Params params;
  dist::Law law;
  std::optional<cf::CharFn> cf;
  std::optional<Mgf> mgf;
  dist::Moments moments;
  Sampler sampler;                         // empty when sampling is unsupported
  std::function<double(double)> closed_quantile;  // empty when none exists
  std::shared_ptr<const DiscreteTable> table;
  /// d -> density at uep - d. Set when the density is singular at a nonzero
  /// upper endpoint, where x = uep - d cannot resolve small d.
  std::function<double(double)> density_below_uep;

  /// Location/spread hints for quadrature and quantile bracketing.
  double center = 0.0;
  double spread = 1.0;

  bool is_discrete() const { return law.kind() == dist::Law::Kind::Discrete; }
};

struct LawInfo {
  std::string name;
  std::vector<std::pair<std::string, double>> params;  // name, default
  std::string summary;
};

/// Every registered law with its parameters and defaults.
const std::vector<LawInfo>& registry();

/// Build a law by name. Missing parameters take registry defaults; unknown
/// names raise UnknownLaw, out-of-domain parameters raise DomainError.
CatalogEntry make_law(const std::string& name, const Params& params = {});

/// Generalized inverse inf{x : F(x) >= u}.
double quantile(const CatalogEntry& entry, double u);

/// n draws, deterministic in seed (block-seeded, identical serial/parallel).
std::vector<double> sample(const CatalogEntry& entry, std::size_t n, std::uint64_t seed);

/// t(n) = sqrt(n) N(0,1) / sqrt(chi2_n) with the closed-form density.
CatalogEntry transform_student(double n);
/// F(n, m) = (chi2_n / n) / (chi2_m / m) with the closed-form density.
CatalogEntry transform_fisher(double n, double m);

/// Law of scale * X + shift.
CatalogEntry affine(const CatalogEntry& base, double scale, double shift);

/// Finite discrete law from atoms and masses (masses must sum to 1).
CatalogEntry discrete_table(std::string name, const std::vector<double>& atoms, const std::vector<double>& masses);

/// E g(X) by summation (discrete) or adaptive quadrature (continuous).
double expect(const CatalogEntry& entry, const std::function<double(double)>& g, double abs_tol = 1e-10);

/// Total mass: pmf sum or pdf integral.
double total_mass(const CatalogEntry& entry);

struct GammaSumReport {
  double ks_statistic;
  double p_value;
  bool passed;  // p > 0.01
  std::size_t samples;
};

/// KS test of gamma(a1, b) + gamma(a2, b) samples against gamma(a1 + a2, b).
GammaSumReport gamma_sum_check(double a1, double a2, double b, std::size_t n = 100000, std::uint64_t seed = 1);

}  // namespace probalab::catalog
