#pragma once

#include <cstdint>

namespace biphoton::detail {

/// Algorithm name recorded in output metadata so ensemble statistics can be
/// reproduced in other implementations.
inline constexpr const char* kRngAlgorithm = "splitmix64+box-muller";

/// SplitMix64: splittable counter-style generator, fully specified by its
/// 64-bit state (Steele, Lea & Flood 2014). Sequential seeds expand into
/// independent streams, which is how ensembles assign per-path generators.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in (0, 1].
  double next_unit() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }
};

/// Standard normal draws via the Box-Muller transform; bit-reproducible
/// given the seed on any IEEE-754 platform with a correctly rounded libm.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_{seed} {}

  double next();

 private:
  SplitMix64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace biphoton::detail
