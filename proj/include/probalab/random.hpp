#pragma once

#include <cstdint>
#include <random>

namespace probalab {

/// SplitMix64 finalizer; decorrelates (seed, stream) pairs before they seed
/// the engine.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// A seeded random stream. Stream (seed, index) is a pure function of its
/// two arguments, so work split over any number of workers reproduces the
/// serial result as long as each unit of work owns its stream index.
class Stream {
 public:
  explicit Stream(std::uint64_t seed, std::uint64_t index = 0)
      : engine_(mix64(mix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL))) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal by Box-Muller; values are produced in pairs.
  double normal();

  double exponential(double rate = 1.0);

  /// Gamma(shape, rate) by Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape, double rate = 1.0);

  /// +1 / -1 with probability 1/2 each.
  double rademacher() { return (engine_() >> 63) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace probalab
