#include "probalab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace probalab::kernels {

void for_blocks(std::size_t units, std::size_t block, std::uint64_t seed, const RangeBody& body, Exec exec) {
  if (units == 0) return;
  const auto blocks = static_cast<std::int64_t>((units + block - 1) / block);
  const auto run = [&](std::int64_t b) {
    const std::size_t begin = static_cast<std::size_t>(b) * block;
    Stream stream(seed, static_cast<std::uint64_t>(b));
    body(stream, begin, std::min(units, begin + block));
  };
  if (exec == Exec::Serial) {
    for (std::int64_t b = 0; b < blocks; ++b) run(b);
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < blocks; ++b) run(b);
}

void fill_blocks(std::span<double> out, std::uint64_t seed, const BlockFill& fill, Exec exec) {
  const std::size_t n = out.size();
  const auto blocks = static_cast<std::int64_t>((n + kBlock - 1) / kBlock);
  const auto body = [&](std::int64_t b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
    const std::size_t len = std::min(kBlock, n - begin);
    Stream stream(seed, static_cast<std::uint64_t>(b));
    fill(stream, out.subspan(begin, len));
  };
  if (exec == Exec::Serial) {
    for (std::int64_t b = 0; b < blocks; ++b) body(b);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < blocks; ++b) body(b);
}

std::vector<double> sample(const Sampler& draw, std::size_t n, std::uint64_t seed, Exec exec) {
  std::vector<double> out(n);
  fill_blocks(
      out, seed,
      [&draw](Stream& s, std::span<double> block) {
        for (double& v : block) v = draw(s);
      },
      exec);
  return out;
}

std::vector<double> run_trials(std::size_t trials, std::uint64_t seed, const Trial& trial, Exec exec) {
  std::vector<double> out(trials);
  const auto count = static_cast<std::int64_t>(trials);
  if (exec == Exec::Serial) {
    for (std::int64_t t = 0; t < count; ++t) {
      Stream s(seed, static_cast<std::uint64_t>(t));
      out[static_cast<std::size_t>(t)] = trial(s);
    }
    return out;
  }
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t t = 0; t < count; ++t) {
    Stream s(seed, static_cast<std::uint64_t>(t));
    out[static_cast<std::size_t>(t)] = trial(s);
  }
  return out;
}

namespace {
std::complex<double> joint_cf(std::span<const double> x, std::span<const double> y, double u, double v) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double phase = u * x[k] + v * y[k];
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double n = static_cast<double>(x.size());
  return {re / n, im / n};
}
}  // namespace

std::vector<std::complex<double>> empirical_cf_grid(std::span<const double> x, std::span<const double> y,
                                                    std::span<const std::pair<double, double>> grid, Exec exec) {
  std::vector<std::complex<double>> out(grid.size());
  const auto count = static_cast<std::int64_t>(grid.size());
  if (exec == Exec::Serial) {
    for (std::int64_t g = 0; g < count; ++g)
      out[static_cast<std::size_t>(g)] = joint_cf(x, y, grid[g].first, grid[g].second);
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t g = 0; g < count; ++g)
    out[static_cast<std::size_t>(g)] = joint_cf(x, y, grid[g].first, grid[g].second);
  return out;
}

std::vector<double> tabulate(const std::function<double(double)>& f, std::span<const double> nodes, Exec exec) {
  std::vector<double> out(nodes.size());
  const auto count = static_cast<std::int64_t>(nodes.size());
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(nodes[i]);
    return out;
  }
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(nodes[i]);
  return out;
}

}  // namespace probalab::kernels
