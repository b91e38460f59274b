#include "probalab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <tuple>

#include <json.hpp>

#include "probalab/error.hpp"

namespace probalab::report {

Row from_bound(const std::string& module, const BoundReport& b, std::uint64_t seed, std::uint64_t trials) {
  return {module, b.name, b.lhs, b.rhs, b.tolerance, b.satisfied, seed, trials};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, r.ptr};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double read_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  fail(ErrorKind::UsageError, "bad number in report: " + s);
}

}  // namespace

std::string to_csv(const std::vector<Row>& rows) {
  std::string out = "module,criterion,lhs,rhs,tolerance,pass,seed,trials\n";
  for (const Row& r : rows) {
    out += csv_field(r.module) + ',' + csv_field(r.criterion) + ',' + format_double(r.lhs) + ',' +
           format_double(r.rhs) + ',' + format_double(r.tolerance) + ',' + (r.pass ? "true" : "false") + ',' +
           std::to_string(r.seed) + ',' + std::to_string(r.trials) + '\n';
  }
  return out;
}

std::string to_json(const std::vector<Row>& rows) {
  auto arr = nlohmann::json::array();
  for (const Row& r : rows) {
    nlohmann::json o;
    o["module"] = r.module;
    o["criterion"] = r.criterion;
    o["lhs"] = number(r.lhs);
    o["rhs"] = number(r.rhs);
    o["tolerance"] = number(r.tolerance);
    o["pass"] = r.pass;
    o["seed"] = r.seed;
    o["trials"] = r.trials;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + '\n';
}

std::vector<Row> from_json(const std::string& text) {
  std::vector<Row> rows;
  try {
    for (const auto& o : nlohmann::json::parse(text)) {
      rows.push_back({o.at("module").get<std::string>(), o.at("criterion").get<std::string>(),
                      read_number(o.at("lhs")), read_number(o.at("rhs")), read_number(o.at("tolerance")),
                      o.at("pass").get<bool>(), o.at("seed").get<std::uint64_t>(),
                      o.at("trials").get<std::uint64_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::UsageError, std::string("malformed report JSON: ") + e.what());
  }
  return rows;
}

void sort_rows(std::vector<Row>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.module, a.criterion) < std::tie(b.module, b.criterion);
  });
}

}  // namespace probalab::report
