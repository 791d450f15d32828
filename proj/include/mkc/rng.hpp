#pragma once

#include <cstdint>

namespace mkc {

// Deterministic xoshiro256** generator seeded through splitmix64.
//
// Stream layout: Rng(seed) is stream 0 of that seed; Rng(seed, stream)
// yields a decorrelated substream. The Monte-Carlo harness derives the
// generator for run r as Rng(seed_base + r), so reports are reproducible
// regardless of execution order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // 53-bit mantissa uniform in [0, 1).
  double uniform01();
  double uniform(double lo, double hi);

  // Box-Muller transform; two uniforms per draw, no cached spare.
  double normal(double mean = 0.0, double stddev = 1.0);

  // Uniform point on the unit sphere.
  void unit_vector3(double out[3]);

 private:
  std::uint64_t state_[4];
};

}  // namespace mkc
