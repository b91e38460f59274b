// Serial reference path against the OpenMP path for the Monte Carlo kernels.
#include <benchmark/benchmark.h>

#include "probalab/catalog.hpp"
#include "probalab/charfn.hpp"
#include "probalab/gaussian_vector.hpp"
#include "probalab/kernels.hpp"
#include "probalab/limits.hpp"
#include "probalab/processes.hpp"

namespace {

using namespace probalab;

kernels::Exec exec_of(const benchmark::State& st) {
  return st.range(0) == 0 ? kernels::Exec::Serial : kernels::Exec::Parallel;
}

void BM_NormalSample(benchmark::State& st) {
  for (auto _ : st) {
    auto v = kernels::sample([](Stream& s) { return s.normal(); }, 1 << 20, 7, exec_of(st));
    benchmark::DoNotOptimize(v.data());
  }
  st.SetItemsProcessed(st.iterations() * (1 << 20));
}

void BM_GaussianVector(benchmark::State& st) {
  const auto gv = gauss::GaussianVector::standard(8);
  for (auto _ : st) {
    auto m = gv.sample(100000, 7, exec_of(st));
    benchmark::DoNotOptimize(m(0, 0));
  }
}

void BM_Brownian(benchmark::State& st) {
  const std::vector<double> grid{0.25, 0.5, 0.75, 1.0};
  for (auto _ : st) {
    auto p = process::brownian_motion(grid, 200000, 7, exec_of(st));
    benchmark::DoNotOptimize(p.values(0, 0));
  }
}

void BM_BerryEsseenTrials(benchmark::State& st) {
  const auto spec = limits::TriangularSpec::iid_of(catalog::make_law("exponential"));
  for (auto _ : st) {
    auto r = limits::berry_esseen_gap(spec, 100, 20000, 7, exec_of(st));
    benchmark::DoNotOptimize(r.gap);
  }
}

void BM_EmpiricalCf(benchmark::State& st) {
  const auto x = kernels::sample([](Stream& s) { return s.normal(); }, 200000, 1);
  const auto y = kernels::sample([](Stream& s) { return s.normal(); }, 200000, 2);
  const auto grid = cf::default_probe_grid();
  for (auto _ : st) {
    auto v = kernels::empirical_cf_grid(x, y, grid, exec_of(st));
    benchmark::DoNotOptimize(v.data());
  }
}

}  // namespace

BENCHMARK(BM_NormalSample)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_GaussianVector)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_Brownian)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_BerryEsseenTrials)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_EmpiricalCf)->Arg(0)->Arg(1)->ArgName("parallel");

BENCHMARK_MAIN();
