#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "probalab/acceptance.hpp"
#include "probalab/catalog.hpp"
#include "probalab/charfn.hpp"
#include "probalab/condexp.hpp"
#include "probalab/error.hpp"
#include "probalab/gaussian_vector.hpp"
#include "probalab/inequalities.hpp"
#include "probalab/ks.hpp"
#include "probalab/limits.hpp"
#include "probalab/linalg.hpp"
#include "probalab/normal_approx.hpp"
#include "probalab/processes.hpp"
#include "probalab/report.hpp"

namespace probalab::cli {

namespace {

using nlohmann::json;
using report::Row;

// --config file.json: top-level keys are options of the main app, nested
// objects address subcommands ({"limit": {"berry-esseen": {"n": 100}}}).
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    walk(j, {}, items);
    return items;
  }

 private:
  static void walk(const json& j, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() && key != "params") {
        auto next = parents;
        next.push_back(key);
        // "++" / "--" open and close a subcommand section, which is how
        // CLI11 marks a configurable subcommand as parsed.
        items.push_back({next, "++", {}});
        walk(value, next, items);
        items.push_back({next, "--", {}});
        continue;
      }
      CLI::ConfigItem item{parents, key, {}};
      if (value.is_array() && key != "grid" && key != "mean" && key != "cov" && key != "x" && key != "labels") {
        for (const auto& v : value) item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      } else if (value.is_string()) {
        item.inputs.push_back(value.get<std::string>());
      } else if (value.is_boolean()) {
        item.inputs.push_back(value.get<bool>() ? "true" : "false");
      } else {
        item.inputs.push_back(value.dump());
      }
      items.push_back(std::move(item));
    }
  }
};

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string law = "gaussian";
  std::string params = "{}";
};

std::uint64_t need_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("PROBALAB_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::UsageError, "PROBALAB_SEED is not an unsigned integer");
  }
  fail(ErrorKind::UsageError, "this subcommand is stochastic: pass --seed or set PROBALAB_SEED");
}

template <class T>
T parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::UsageError, "bad " + what + ": " + e.what());
  }
}

catalog::CatalogEntry law_of(const Common& c) {
  return catalog::make_law(c.law, parse_json<catalog::Params>(c.params, "--params"));
}

linalg::Matrix matrix_of(const std::string& text, const std::string& what) {
  return linalg::Matrix::from_rows(parse_json<std::vector<std::vector<double>>>(text, what));
}

// Writes to --out when given, otherwise to the stream.
void emit(const Common& c, std::ostream& out, const std::string& bytes) {
  if (c.out.empty()) {
    out << bytes;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) fail(ErrorKind::UsageError, "cannot write " + c.out);
  f << bytes;
}

int emit_rows(const Common& c, std::ostream& out, const std::vector<Row>& rows) {
  emit(c, out, report::to_csv(rows));
  return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; }) ? 0 : 1;
}

std::string g9(double x) {
  std::ostringstream os;
  os << std::setprecision(9) << x;
  return os.str();
}

std::string kv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string s = "key,value\n";
  for (const auto& [k, v] : rows) s += k + ',' + v + '\n';
  return s;
}

std::string opt_str(const std::optional<double>& v) { return v ? report::format_double(*v) : "undefined"; }

std::string paths_csv(const process::PathSample& s) {
  std::string out = "path,time,value\n";
  for (std::size_t p = 0; p < s.values.rows(); ++p)
    for (std::size_t j = 0; j < s.times.size(); ++j)
      out += std::to_string(p) + ',' + report::format_double(s.times[j]) + ',' +
             report::format_double(s.values(p, j)) + '\n';
  return out;
}

std::string matrix_csv(const linalg::Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? "," : "") + report::format_double(m(i, j));
    out += '\n';
  }
  return out;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"probalab: seeded probability experiments and formula checks"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values");
  app.require_subcommand(1);
  Common c;
  std::function<int()> action;

  const auto add_seed = [&](CLI::App* s) { s->add_option("--seed", c.seed, "RNG seed (fallback PROBALAB_SEED)"); };
  const auto add_out = [&](CLI::App* s) { s->add_option("--out", c.out, "output file (default stdout)"); };
  const auto add_law = [&](CLI::App* s) {
    s->add_option("--law", c.law, "catalog law name")->capture_default_str();
    s->add_option("--params", c.params, "law parameters as a JSON object")->capture_default_str();
  };

  // ---- law ---------------------------------------------------------------
  auto* law = app.add_subcommand("law", "catalog laws");
  law->require_subcommand(1);
  auto* law_info = law->add_subcommand("info", "moments and parameters of a law (or the registry)");
  add_law(law_info);
  bool list = false;
  law_info->add_flag("--list", list, "list every registered law");
  law_info->callback([&] {
    action = [&] {
      if (list) {
        std::string s = "law,params,summary\n";
        for (const auto& i : catalog::registry()) {
          std::string p;
          for (const auto& [k, v] : i.params) p += (p.empty() ? "" : " ") + k + "=" + report::format_double(v);
          s += i.name + ',' + p + ",\"" + i.summary + "\"\n";
        }
        out << s;
        return 0;
      }
      const auto e = law_of(c);
      std::vector<std::pair<std::string, std::string>> rows{
          {"law", e.name},
          {"kind", e.is_discrete() ? "discrete" : "absolutely_continuous"},
          {"mean", opt_str(e.moments.mean)},
          {"variance", opt_str(e.moments.variance)},
          {"lep", report::format_double(e.law.lep())},
          {"uep", report::format_double(e.law.uep())},
          {"sampler", e.sampler ? "yes" : "no"},
          {"cf", e.cf ? "yes" : "no"}};
      for (const auto& [k, v] : e.params) rows.emplace_back("param." + k, report::format_double(v));
      emit(c, out, kv(rows));
      return 0;
    };
  });

  auto* law_sample = law->add_subcommand("sample", "draws from a law, one per line");
  add_law(law_sample);
  add_seed(law_sample);
  add_out(law_sample);
  std::size_t n = 1000;
  law_sample->add_option("--n", n, "sample size")->capture_default_str();
  law_sample->callback([&] {
    action = [&] {
      const auto e = law_of(c);
      const auto xs = catalog::sample(e, n, need_seed(c));
      std::string s = "x\n";
      for (double x : xs) s += report::format_double(x) + '\n';
      emit(c, out, s);
      return 0;
    };
  });

  auto* law_q = law->add_subcommand("quantile", "generalized inverse inf{x : F(x) >= u}");
  add_law(law_q);
  double u = 0.5;
  law_q->add_option("--u", u, "level in (0, 1)")->required();
  law_q->callback([&] {
    action = [&] {
      out << report::format_double(catalog::quantile(law_of(c), u)) << '\n';
      return 0;
    };
  });

  // ---- cf ----------------------------------------------------------------
  auto* cfc = app.add_subcommand("cf", "characteristic-function inversion");
  cfc->require_subcommand(1);
  double x = 0.0;
  double a = -1.0;
  double b = 1.0;
  double cutoff = 64.0;
  std::size_t count = 2;
  auto* cf_inv = cfc->add_subcommand("invert", "density at x, or F(b) - F(a) with --a/--b");
  add_law(cf_inv);
  auto* x_opt = cf_inv->add_option("--x", x, "density point");
  cf_inv->add_option("--a", a, "left end for a cdf difference");
  cf_inv->add_option("--b", b, "right end for a cdf difference");
  cf_inv->add_option("--cutoff", cutoff, "integration cutoff U")->capture_default_str();
  cf_inv->callback([&] {
    action = [&] {
      const auto e = law_of(c);
      require(e.cf.has_value(), ErrorKind::UsageError, "law " + e.name + " has no characteristic function");
      if (x_opt->count() > 0) {
        const auto d = cf::invert_density(*e.cf, x, cutoff);
        emit(c, out, kv({{"x", report::format_double(x)}, {"density", g9(d.value)}, {"imag", g9(d.imag)}}));
      } else {
        const double v = cf::invert_cdf_difference(*e.cf, a, b, cutoff);
        emit(c, out, kv({{"a", report::format_double(a)}, {"b", report::format_double(b)}, {"difference", g9(v)}}));
      }
      return 0;
    };
  });
  auto* cf_sum = cfc->add_subcommand("sum", "density of the sum of --count iid copies at x");
  add_law(cf_sum);
  cf_sum->add_option("--count", count, "number of summands")->capture_default_str();
  cf_sum->add_option("--x", x, "density point")->required();
  cf_sum->add_option("--cutoff", cutoff, "integration cutoff U")->capture_default_str();
  cf_sum->callback([&] {
    action = [&] {
      const auto e = law_of(c);
      require(e.cf.has_value(), ErrorKind::UsageError, "law " + e.name + " has no characteristic function");
      require(count >= 1, ErrorKind::UsageError, "--count must be >= 1");
      const std::vector<cf::CharFn> parts(count, *e.cf);
      const auto d = cf::invert_density(cf::cf_of_sum(parts), x, cutoff);
      emit(c, out, kv({{"x", report::format_double(x)}, {"density", g9(d.value)}}));
      return 0;
    };
  });

  // ---- gauss -------------------------------------------------------------
  auto* gauss = app.add_subcommand("gauss", "Gaussian vectors");
  gauss->require_subcommand(1);
  std::string mean_text;
  std::string cov_text = "[[1]]";
  const auto add_mc = [&](CLI::App* s, bool with_mean) {
    if (with_mean) s->add_option("--mean", mean_text, "mean vector as JSON (default zero)");
    s->add_option("--cov", cov_text, "covariance matrix as JSON rows")->capture_default_str();
  };
  const auto gv_of = [&] {
    linalg::SymMatrix cov(matrix_of(cov_text, "--cov"));
    std::vector<double> m =
        mean_text.empty() ? std::vector<double>(cov.dim()) : parse_json<std::vector<double>>(mean_text, "--mean");
    require(m.size() == cov.dim(), ErrorKind::UsageError, "--mean and --cov sizes differ");
    return gauss::GaussianVector(std::move(m), std::move(cov));
  };
  auto* g_sample = gauss->add_subcommand("sample", "rows of N(m, Sigma) draws");
  add_mc(g_sample, true);
  add_seed(g_sample);
  add_out(g_sample);
  g_sample->add_option("--n", n, "sample size")->capture_default_str();
  g_sample->callback([&] {
    action = [&] {
      emit(c, out, matrix_csv(gv_of().sample(n, need_seed(c))));
      return 0;
    };
  });
  auto* g_quad = gauss->add_subcommand("quadform", "KS test of (X-m)' Sigma^-1 (X-m) against chi2_d");
  add_mc(g_quad, true);
  add_seed(g_quad);
  add_out(g_quad);
  g_quad->add_option("--n", n, "sample size")->capture_default_str();
  g_quad->callback([&] {
    action = [&] {
      const auto gv = gv_of();
      const std::uint64_t seed = need_seed(c);
      const auto q = gv.quadratic_form_stat(gv.sample(n, seed));
      const auto chi = catalog::make_law("chi_square", {{"d", static_cast<double>(gv.dim())}});
      const auto t = ks::one_sample(q, [&](double v) { return chi.law.cdf(v); }, 0.01);
      return emit_rows(c, out, {{"gauss-linalg", "quadform KS p-value >= 0.01", 0.01, t.p_value, 0.0, t.passed, seed, n}});
    };
  });
  auto* g_eig = gauss->add_subcommand("eigen", "eigenvalues (first row) and eigenvectors (one per row)");
  add_mc(g_eig, false);
  add_out(g_eig);
  g_eig->callback([&] {
    action = [&] {
      const auto e = linalg::eigendecompose(linalg::SymMatrix(matrix_of(cov_text, "--cov")));
      std::string s;
      for (std::size_t i = 0; i < e.delta.size(); ++i) s += (i ? "," : "") + report::format_double(e.delta[i]);
      emit(c, out, s + '\n' + matrix_csv(e.t));
      return 0;
    };
  });

  // ---- ineq --------------------------------------------------------------
  auto* ineq = app.add_subcommand("ineq", "inequality property suite");
  ineq->require_subcommand(1);
  auto* ineq_run = ineq->add_subcommand("run", "randomized instances for every inequality");
  std::string suite = "all";
  std::size_t trials = 1000;
  std::size_t paths = 2000;
  ineq_run->add_option("--suite", suite, "inequality name or all")->capture_default_str();
  ineq_run->add_option("--trials", trials, "instances per inequality")->capture_default_str();
  ineq_run->add_option("--paths", paths, "Monte Carlo paths per maximal-inequality instance")->capture_default_str();
  add_seed(ineq_run);
  add_out(ineq_run);
  ineq_run->callback([&] {
    action = [&] {
      const std::uint64_t seed = need_seed(c);
      const auto summary = ineq::property_suite({trials, paths, seed});
      std::vector<Row> rows;
      for (const auto& s : summary)
        if (suite == "all" || suite == s.inequality)
          rows.push_back({"ineq-suite", s.inequality + " violations", static_cast<double>(s.violations), 0.0, 0.0,
                          s.violations == 0, seed, s.instances});
      require(!rows.empty(), ErrorKind::UsageError, "unknown inequality '" + suite + "'");
      return emit_rows(c, out, rows);
    };
  });

  // ---- limit -------------------------------------------------------------
  auto* lim = app.add_subcommand("limit", "limit theorem experiments");
  lim->require_subcommand(1);
  double eps = 0.1;
  double delta = 1.0;
  double cut = 1.0;
  std::string weights = "1";
  std::optional<std::size_t> n_arg;
  std::optional<std::size_t> trials_arg;
  const auto add_limit = [&](CLI::App* s, std::size_t n_default, std::size_t trials_default) {
    add_law(s);
    add_seed(s);
    add_out(s);
    s->add_option("--n", n_arg, "number of summands (default " + std::to_string(n_default) + ")");
    if (trials_default > 0)
      s->add_option("--trials", trials_arg, "Monte Carlo trials (default " + std::to_string(trials_default) + ")");
  };
  const auto centered = [&] {
    const auto e = law_of(c);
    return catalog::affine(e, 1.0, -e.moments.require_mean());
  };

  auto* l_wlln = lim->add_subcommand("wlln", "P(|S_n/n - mu| > eps) at n = 10, 100, ..., --n");
  add_limit(l_wlln, 10000, 200);
  l_wlln->callback([&] {
    action = [&] {
      const std::size_t n = n_arg.value_or(10000);
      const std::size_t trials = trials_arg.value_or(200);
      const std::uint64_t seed = need_seed(c);
      std::vector<std::size_t> ns;
      for (std::size_t k = 10; k <= n; k *= 10) ns.push_back(k);
      if (ns.empty() || ns.back() != n) ns.push_back(n);
      const auto r = limits::wlln_experiment(law_of(c), ns, trials, seed);
      std::vector<Row> rows;
      for (const auto& [k, v] : r.criteria) rows.push_back({"limit-lab", "wlln " + k, v, 1.0, 0.0, r.passed, seed, trials});
      return emit_rows(c, out, rows);
    };
  });

  auto* l_slln = lim->add_subcommand("slln", "Kolmogorov criterion with b_n = n^power and one path");
  double power = 1.0;
  add_limit(l_slln, 100000, 0);
  l_slln->add_option("--power", power, "b_n = n^power")->capture_default_str();
  l_slln->callback([&] {
    action = [&] {
      const std::size_t n = n_arg.value_or(100000);
      const std::uint64_t seed = need_seed(c);
      const auto r = limits::slln_kolmogorov_criterion(
          limits::TriangularSpec::iid_of(law_of(c)),
          [power](std::size_t k) { return std::pow(static_cast<double>(k), power); }, n, seed);
      std::vector<Row> rows{
          {"limit-lab", "criterion series verdict " + limits::to_string(r.criterion.verdict), r.criterion.block_ratio,
           0.75, 0.0, r.criterion.verdict == limits::Verdict::Converges, seed, n},
          {"limit-lab", "max |S_k - E S_k| / b_k on [n/2, n]", r.tail_max, 0.05, 0.0, r.tail_max < 0.05, seed, n}};
      return emit_rows(c, out, rows);
    };
  });

  auto* l_three = lim->add_subcommand("three-series", "X_k = w_k X with w_k from --weights (1 or 2^-k or 1/k)");
  add_limit(l_three, 10000, 0);
  l_three->add_option("--c", cut, "truncation level")->capture_default_str();
  l_three->add_option("--weights", weights, "1 | 2^-k | 1/k")->capture_default_str();
  l_three->callback([&] {
    action = [&] {
      const std::size_t n = n_arg.value_or(10000);
      const std::uint64_t seed = need_seed(c);
      const auto e = law_of(c);
      limits::TriangularSpec spec;
      if (weights == "1") spec = limits::TriangularSpec::iid_of(e);
      else if (weights == "2^-k")
        spec = limits::TriangularSpec::weighted(
            e, [](std::size_t k) { return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(k, 2000))); }, "2^-k");
      else if (weights == "1/k")
        spec = limits::TriangularSpec::weighted(e, [](std::size_t k) { return 1.0 / static_cast<double>(k); }, "1/k");
      else
        fail(ErrorKind::UsageError, "--weights must be 1, 2^-k or 1/k");
      const auto r = limits::three_series_check(spec, cut, n, std::max<std::size_t>(n / 10, 2), 8, seed);
      const auto row = [&](const std::string& name, const limits::SeriesSummary& s) {
        return Row{"limit-lab", name + " " + limits::to_string(s.verdict), s.partial, s.block_ratio, 0.0,
                   s.verdict != limits::Verdict::Inconclusive, seed, n};
      };
      std::vector<Row> rows{row("sum P(|X_k| >= c)", r.prob), row("sum Var X_k^(c)", r.variance),
                            row("sum E X_k^(c)", r.mean),
                            {"limit-lab", "verdict " + limits::to_string(r.verdict), r.flatness, 0.0, 0.0,
                             r.verdict != limits::Verdict::Inconclusive, seed, 8}};
      emit(c, out, report::to_csv(rows));
      return 0;
    };
  });

  auto* l_clt = lim->add_subcommand("clt", "Lindeberg g_n(eps), Lyapounov ratio, Feller max for the centered law");
  add_limit(l_clt, 10000, 0);
  l_clt->add_option("--eps", eps, "Lindeberg epsilon")->capture_default_str();
  l_clt->add_option("--delta", delta, "Lyapounov delta")->capture_default_str();
  l_clt->callback([&] {
    action = [&] {
      const std::size_t n = n_arg.value_or(10000);
      const auto spec = limits::TriangularSpec::iid_of(centered());
      emit(c, out,
           kv({{"n", std::to_string(n)},
               {"lindeberg_g", g9(limits::lindeberg_g(spec, n, eps))},
               {"lyapounov_ratio", g9(limits::lyapounov_ratio(spec, n, delta))},
               {"feller_max", g9(limits::feller_max(spec, n))}}));
      return 0;
    };
  });

  auto* l_be = lim->add_subcommand("berry-esseen", "sup |F_n - Phi| against 36 beta^3 / s^3");
  add_limit(l_be, 10000, 100000);
  l_be->callback([&] {
    action = [&] {
      const std::size_t n = n_arg.value_or(10000);
      const std::size_t trials = trials_arg.value_or(100000);
      const std::uint64_t seed = need_seed(c);
      const auto r = limits::berry_esseen_gap(limits::TriangularSpec::iid_of(centered()), n, trials, seed);
      return emit_rows(c, out, {{"limit-lab", "sup gap <= 36 beta^3/s^3", r.gap, r.bound, r.slack, r.holds, seed, trials}});
    };
  });

  auto* l_lil = lim->add_subcommand("lil", "running max of S_n / sqrt(2 n log log n) for Rademacher steps");
  std::size_t seeds = 5;
  add_seed(l_lil);
  add_out(l_lil);
  l_lil->add_option("--n", n_arg, "n_max (default 10000000)");
  l_lil->add_option("--seeds", seeds, "independent paths")->capture_default_str();
  l_lil->callback([&] {
    action = [&] {
      const std::size_t n = n_arg.value_or(10000000);
      const std::uint64_t seed = need_seed(c);
      const auto r = limits::lil_trajectory(n, seed, seeds);
      std::vector<Row> rows;
      for (std::size_t i = 0; i < r.running_max.size(); ++i) {
        const double m = r.running_max[i];
        rows.push_back({"limit-lab", "running max in [0.5, 1.3], path " + std::to_string(i + 1), m, 1.3, 0.0,
                        m >= 0.5 && m <= 1.3, seed, n});
      }
      return emit_rows(c, out, rows);
    };
  });

  // ---- cond --------------------------------------------------------------
  auto* cond = app.add_subcommand("cond", "conditional expectation on finite partitions");
  cond->require_subcommand(1);
  std::string x_text = "[1,2,3,4,5,6]";
  std::string labels_text = "[1,0,1,0,1,0]";
  auto* c_exp = cond->add_subcommand("expect", "cell means of x given labels");
  c_exp->add_option("--x", x_text, "values as JSON")->capture_default_str();
  c_exp->add_option("--labels", labels_text, "integer labels as JSON")->capture_default_str();
  add_out(c_exp);
  c_exp->callback([&] {
    action = [&] {
      const auto xs = parse_json<std::vector<double>>(x_text, "--x");
      const auto ls = parse_json<std::vector<std::int64_t>>(labels_text, "--labels");
      require(xs.size() == ls.size(), ErrorKind::UsageError, "--x and --labels lengths differ");
      const auto r = condexp::regression_total_expectation(xs, ls);
      std::string s = "label,probability,cond_mean\n";
      for (std::size_t i = 0; i < r.labels.size(); ++i)
        s += std::to_string(r.labels[i]) + ',' + report::format_double(r.frequencies[i]) + ',' +
             report::format_double(r.cell_means[i]) + '\n';
      emit(c, out, s);
      return r.exact ? 0 : 1;
    };
  });
  auto* c_check = cond->add_subcommand("check", "operator laws on random finite instances");
  std::size_t instances = 500;
  c_check->add_option("--instances", instances, "random instances")->capture_default_str();
  add_seed(c_check);
  add_out(c_check);
  c_check->callback([&] {
    action = [&] {
      const std::uint64_t seed = need_seed(c);
      Stream s(seed, 0);
      std::size_t bad = 0;
      for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t m = 2 + static_cast<std::size_t>(s.uniform() * 30.0);
        std::vector<double> xs(m);
        std::vector<double> ys(m);
        std::vector<std::int64_t> fine(m);
        std::vector<std::int64_t> coarse(m);
        for (std::size_t k = 0; k < m; ++k) {
          xs[k] = s.normal();
          ys[k] = s.normal();
          fine[k] = static_cast<std::int64_t>(s.uniform() * 5.0);
          coarse[k] = fine[k] / 2;
        }
        const condexp::FinitePartition pf(fine);
        const bool ok = condexp::operator_laws(xs, ys, pf, s.normal(), s.normal()).all() &&
                        condexp::tower_check(xs, condexp::FinitePartition(coarse), pf).exact() &&
                        condexp::regression_total_expectation(xs, fine).exact;
        bad += !ok;
      }
      return emit_rows(c, out, {{"cond-expect", "instances violating an operator law", static_cast<double>(bad), 0.0,
                                 0.0, bad == 0, seed, instances}});
    };
  });

  // ---- process -----------------------------------------------------------
  auto* proc = app.add_subcommand("process", "path generators, one CSV row per (path, time)");
  proc->require_subcommand(1);
  std::string grid_text = "[0.25,0.5,0.75,1]";
  double theta = 1.0;
  std::string kernel = "min";
  const auto add_proc = [&](CLI::App* s) {
    s->add_option("--grid", grid_text, "time grid as JSON")->capture_default_str();
    s->add_option("--paths", paths, "number of paths");
    add_seed(s);
    add_out(s);
  };
  auto* p_poi = proc->add_subcommand("poisson", "counting process with Exp(theta) gaps");
  add_proc(p_poi);
  p_poi->add_option("--theta", theta, "intensity")->capture_default_str();
  auto* p_bm = proc->add_subcommand("brownian", "Brownian motion by increment cumulation");
  add_proc(p_bm);
  auto* p_gp = proc->add_subcommand("gauss", "centered Gaussian process with a named covariance");
  add_proc(p_gp);
  p_gp->add_option("--kernel", kernel, "min | const | white")->capture_default_str();
  for (auto* s : {p_poi, p_bm, p_gp}) {
    s->callback([&, s] {
      action = [&, s] {
        const std::uint64_t seed = need_seed(c);
        const auto grid = parse_json<std::vector<double>>(grid_text, "--grid");
        if (s == p_poi) {
          emit(c, out, paths_csv(process::poisson_process(theta, grid, paths, seed).paths));
        } else if (s == p_bm) {
          emit(c, out, paths_csv(process::brownian_motion(grid, paths, seed)));
        } else {
          std::function<double(double, double)> k;
          if (kernel == "min") k = [](double a, double b) { return std::min(a, b); };
          else if (kernel == "const") k = [](double, double) { return 1.0; };
          else if (kernel == "white") k = [](double a, double b) { return a == b ? 1.0 : 0.0; };
          else fail(ErrorKind::UsageError, "--kernel must be min, const or white");
          emit(c, out, paths_csv(process::gaussian_process([](double) { return 0.0; }, k, grid, paths, seed)));
        }
        return 0;
      };
    });
  }

  // ---- normal ------------------------------------------------------------
  auto* norm = app.add_subcommand("normal", "rational normal cdf / quantile approximations");
  norm->require_subcommand(1);
  double arg = 0.0;
  auto* n_cdf = norm->add_subcommand("cdf", "proba_normale(z)");
  n_cdf->add_option("z", arg, "argument")->required();
  n_cdf->callback([&] {
    action = [&] {
      out << g9(normal::proba_normale(arg)) << '\n';
      return 0;
    };
  });
  auto* n_q = norm->add_subcommand("quantile", "inverse_loi_normal(u)");
  n_q->add_option("u", arg, "level")->required();
  n_q->callback([&] {
    action = [&] {
      out << g9(normal::inverse_loi_normal(arg)) << '\n';
      return 0;
    };
  });

  // ---- verify-all --------------------------------------------------------
  auto* va = app.add_subcommand("verify-all", "every acceptance criterion; CSV summary, one row per criterion");
  bool quick = false;
  std::string detail;
  std::string json_out;
  add_seed(va);
  add_out(va);
  va->add_flag("--quick", quick, "10x fewer trials, Monte Carlo tolerances widened by sqrt(10)");
  va->add_option("--detail", detail, "CSV file with every sub-check");
  va->add_option("--json", json_out, "JSON file mirroring the summary CSV");
  va->callback([&] {
    action = [&] {
      acceptance::Options opt;
      opt.seed = need_seed(c);
      opt.quick = quick;
      const auto outcomes = acceptance::run_all(opt);
      for (const auto& o : outcomes) err << acceptance::line(o) << '\n';
      const auto rows = acceptance::summary_rows(outcomes, opt);
      if (!detail.empty()) {
        std::ofstream f(detail, std::ios::binary);
        f << report::to_csv(acceptance::detail_rows(outcomes));
      }
      if (!json_out.empty()) {
        std::ofstream f(json_out, std::ios::binary);
        f << report::to_json(rows);
      }
      return emit_rows(c, out, rows);
    };
  });

  const std::function<void(CLI::App*)> allow_config = [&](CLI::App* a) {
    for (auto* sub : a->get_subcommands([](CLI::App*) { return true; })) {
      sub->configurable();
      allow_config(sub);
    }
  };
  allow_config(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (!action) {
    err << "no subcommand action\n";
    return 2;
  }
  try {
    return action();
  } catch (const ProbaError& e) {
    err << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::UsageError:
      case ErrorKind::UnknownLaw:
      case ErrorKind::DomainError:
      case ErrorKind::ShapeMismatch:
        return 2;
      default:
        return 1;
    }
  }
}

}  // namespace probalab::cli
