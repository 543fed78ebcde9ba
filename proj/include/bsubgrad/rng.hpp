#pragma once

#include <cstdint>
#include <random>

namespace bsubgrad {

/// Seedable generator with a fixed algorithm so runs are byte-reproducible on
/// any standard library: 64-bit Mersenne Twister (std::mt19937_64, fully
/// specified by the standard), uniforms from the top 53 bits, normals by the
/// Box-Muller transform. std::*_distribution is avoided because its output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent generator for sub-stream `stream` of `seed` (SplitMix64
  /// mixing of the pair), used to give every run of a sweep its own stream.
  static Rng split(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in (0, 1].
  double uniform_open_low() { return 1.0 - uniform(); }
  double normal();
  /// +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace bsubgrad
