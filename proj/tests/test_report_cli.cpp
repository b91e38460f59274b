#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "probalab/random.hpp"
#include "probalab/report.hpp"

using namespace probalab;
using report::Row;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "probalab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("csv layout") {
  CHECK(report::to_csv({}) == "module,criterion,lhs,rhs,tolerance,pass,seed,trials\n");
  const std::vector<Row> one{{"m", "c", 0.5, 1.0, 0.0, true, 7, 10}};
  const auto ls = lines(report::to_csv(one));
  REQUIRE(ls.size() == 2);
  CHECK(ls[1].rfind("m,c,", 0) == 0);
  const std::vector<Row> quoted{{"m", "a,b \"x\"", 0.0, 0.0, 0.0, false, 0, 0}};
  CHECK(report::to_csv(quoted).find("\"a,b \"\"x\"\"\"") != std::string::npos);
}

TEST_CASE("json round trip") {
  std::vector<Row> rows{{"charfn", "t", 0.1, 1.0 / 3.0, 1e-9, true, 42, 1000},
                        {"limit-lab", "u", -2.5e-300, 7.0, 0.0, false, 0, 0}};
  CHECK(report::from_json(report::to_json(rows)) == rows);
}

TEST_CASE("format_double reads back exactly") {
  Stream s(5, 0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(s.uniform() - 0.5, static_cast<int>(s.bits() % 200) - 100);
    CHECK(std::strtod(report::format_double(x).c_str(), nullptr) == x);
  }
  CHECK(report::format_double(0.1) == "0.1");
  CHECK(std::strtod(report::format_double(std::numeric_limits<double>::denorm_min()).c_str(), nullptr) ==
        std::numeric_limits<double>::denorm_min());
}

TEST_CASE("sort_rows orders by module then criterion") {
  std::vector<Row> rows{{"b", "a"}, {"a", "z"}, {"a", "b"}};
  report::sort_rows(rows);
  CHECK(rows[0].criterion == "b");
  CHECK(rows[1].criterion == "z");
  CHECK(rows[2].module == "b");
}

TEST_CASE("cli usage errors") {
  CHECK(invoke({"nonsense"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"limit", "berry-esseen", "--law", "bernoulli", "--n", "10"}).code == 2);
  CHECK(invoke({"law", "info", "--law", "no_such_law"}).code == 2);
  CHECK(invoke({"law", "quantile", "--law", "gaussian", "--u", "1.5"}).code == 2);
  CHECK(invoke({"law", "info", "--law", "gamma", "--params", "{not json"}).code == 2);
  CHECK(invoke({"gauss", "eigen", "--cov", "[[1,2],[3]]"}).code == 2);
}

TEST_CASE("cli seed fallback") {
  ::setenv("PROBALAB_SEED", "11", 1);
  const auto a = invoke({"law", "sample", "--law", "exponential", "--n", "5"});
  const auto b = invoke({"law", "sample", "--law", "exponential", "--n", "5", "--seed", "11"});
  ::unsetenv("PROBALAB_SEED");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 1 + 5);
  ::setenv("PROBALAB_SEED", "eleven", 1);
  CHECK(invoke({"law", "sample", "--n", "5"}).code == 2);
  ::unsetenv("PROBALAB_SEED");
}

TEST_CASE("cli berry-esseen row") {
  const auto r = invoke({"limit", "berry-esseen", "--law", "bernoulli", "--params", "{\"p\":0.5}", "--n", "10000",
                      "--trials", "100000", "--seed", "7"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[1].rfind("limit-lab,", 0) == 0);
  CHECK(ls[1].find(",0.36,") != std::string::npos);
  CHECK(ls[1].find(",true,7,100000") != std::string::npos);
  // same bytes on a second run
  CHECK(invoke({"limit", "berry-esseen", "--law", "bernoulli", "--params", "{\"p\":0.5}", "--n", "10000", "--trials",
             "100000", "--seed", "7"})
            .out == r.out);
}

TEST_CASE("cli json config") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto cfg = dir / "probalab_test_config.json";
  {
    std::ofstream f(cfg);
    f << R"({"limit": {"berry-esseen": {"law": "bernoulli", "params": {"p": 0.5}, "n": 100, "trials": 2000, "seed": 3}}})";
  }
  const auto a = invoke({"--config", cfg.string()});
  const auto b = invoke({"limit", "berry-esseen", "--law", "bernoulli", "--params", "{\"p\":0.5}", "--n", "100", "--trials",
                      "2000", "--seed", "3"});
  std::filesystem::remove(cfg);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli one-shot commands") {
  CHECK(std::abs(std::stod(invoke({"normal", "cdf", "0"}).out) - 0.5) < 1e-7);
  const auto q = invoke({"normal", "quantile", "0.975"});
  CHECK(std::abs(std::stod(q.out) - 1.96) < 5e-4);
  CHECK(invoke({"law", "info", "--list"}).out.find("gaussian") != std::string::npos);

  const auto ce = invoke({"cond", "expect", "--x", "[1,2,3,4,5,6]", "--labels", "[1,0,1,0,1,0]"});
  CHECK(ce.code == 0);
  CHECK(ce.out.find('3') != std::string::npos);
  CHECK(ce.out.find('4') != std::string::npos);

  const auto eig = invoke({"gauss", "eigen", "--cov", "[[2,0],[0,1]]"});
  CHECK(eig.code == 0);
  CHECK(lines(eig.out).size() == 3);

  const auto bm = invoke({"process", "brownian", "--grid", "[0.5,1]", "--paths", "3", "--seed", "1"});
  CHECK(bm.code == 0);
  CHECK(lines(bm.out).size() == 1 + 3 * 2);
}

TEST_CASE("cli --out writes the file instead of stdout") {
  const auto path = std::filesystem::temp_directory_path() / "probalab_test_out.csv";
  const auto r = invoke({"law", "sample", "--law", "uniform", "--n", "4", "--seed", "2", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(lines(slurp(path)).size() == 1 + 4);
  std::filesystem::remove(path);
}
