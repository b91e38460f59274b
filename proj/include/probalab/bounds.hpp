#pragma once

#include <algorithm>
#include <cmath>
#include <string>

namespace probalab {

/// One side-by-side check lhs <= rhs. `tolerance` is zero for exact
/// inequalities and 3 standard errors when a side is a Monte Carlo estimate.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double tolerance = 0.0;
  bool satisfied = false;
  std::string context;
};

/// Rounding allowance for exact inequalities evaluated in floating point.
inline double rounding_allowance(double lhs, double rhs) {
  return 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

inline BoundReport make_bound(std::string name, double lhs, double rhs, double tolerance = 0.0,
                              std::string context = {}) {
  BoundReport r{std::move(name), lhs, rhs, rhs - lhs, tolerance, false, std::move(context)};
  r.satisfied = r.slack >= -rounding_allowance(lhs, rhs) - tolerance;
  return r;
}

}  // namespace probalab
