#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "probalab/report.hpp"

namespace probalab::acceptance {

struct Options {
  std::uint64_t seed = 42;
  /// 10x fewer trials, Monte Carlo tolerances widened by sqrt(10).
  bool quick = false;
};

struct Outcome {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<report::Row> checks;  // every sub-check, in a fixed order
  std::string worst;                // the sub-check closest to (or past) its limit
  double seconds = 0.0;             // wall time; not part of any report
};

inline constexpr int kCriteria = 14;

/// Criterion id in 1..14.
Outcome run_criterion(int id, const Options& opt);

/// All criteria in order. Criterion 14 reruns 1..13 and compares the CSV bytes.
std::vector<Outcome> run_all(const Options& opt);

/// One row per criterion: lhs = failed sub-checks, rhs = sub-checks.
std::vector<report::Row> summary_rows(const std::vector<Outcome>& outcomes, const Options& opt);

/// Every sub-check row of every outcome.
std::vector<report::Row> detail_rows(const std::vector<Outcome>& outcomes);

/// "PASS 05 berry-esseen bound (4/4) worst: ..." style line.
std::string line(const Outcome& o);

}  // namespace probalab::acceptance
