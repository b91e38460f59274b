#pragma once

// Data-parallel Monte Carlo kernels. Each kernel has a serial reference path
// and an OpenMP path; work is cut into units that own their random stream,
// so both paths produce bit-identical results for a given seed.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "probalab/random.hpp"

namespace probalab::kernels {

enum class Exec { Serial, Parallel };

/// Samples per block; block b draws from Stream(seed, b).
inline constexpr std::size_t kBlock = 4096;

using Sampler = std::function<double(Stream&)>;
using BlockFill = std::function<void(Stream&, std::span<double>)>;
using Trial = std::function<double(Stream&)>;

/// Calls body(stream, begin, end) for consecutive unit ranges of length block;
/// range b owns Stream(seed, b).
using RangeBody = std::function<void(Stream&, std::size_t, std::size_t)>;
void for_blocks(std::size_t units, std::size_t block, std::uint64_t seed, const RangeBody& body,
                Exec exec = Exec::Parallel);

void fill_blocks(std::span<double> out, std::uint64_t seed, const BlockFill& fill, Exec exec = Exec::Parallel);

std::vector<double> sample(const Sampler& draw, std::size_t n, std::uint64_t seed, Exec exec = Exec::Parallel);

/// One scalar per trial; trial t draws from Stream(seed, t).
std::vector<double> run_trials(std::size_t trials, std::uint64_t seed, const Trial& trial,
                               Exec exec = Exec::Parallel);

/// Empirical joint cf on each (u, v) grid point.
std::vector<std::complex<double>> empirical_cf_grid(std::span<const double> x, std::span<const double> y,
                                                    std::span<const std::pair<double, double>> grid,
                                                    Exec exec = Exec::Parallel);

/// Evaluate f at every node; used for quadrature-heavy tabulations.
std::vector<double> tabulate(const std::function<double(double)>& f, std::span<const double> nodes,
                             Exec exec = Exec::Parallel);

}  // namespace probalab::kernels
