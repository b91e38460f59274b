#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "probalab/bounds.hpp"

namespace probalab::report {

/// One verification outcome, the unit of every CSV/JSON report.
struct Row {
  std::string module;
  std::string criterion;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;

  bool operator==(const Row&) const = default;
};

Row from_bound(const std::string& module, const BoundReport& b, std::uint64_t seed, std::uint64_t trials);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// Header plus one line per row, '\n' endings, columns
/// module,criterion,lhs,rhs,tolerance,pass,seed,trials.
std::string to_csv(const std::vector<Row>& rows);
std::string to_json(const std::vector<Row>& rows);
std::vector<Row> from_json(const std::string& text);

/// Sort by (module, criterion) so output never depends on scheduling.
void sort_rows(std::vector<Row>& rows);

}  // namespace probalab::report
