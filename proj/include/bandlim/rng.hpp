#pragma once

#include <array>
#include <cstdint>

namespace bandlim {

// Deterministic generator with explicit stream splitting: the same
// (seed, stream) pair reproduces the same draw sequence bit for bit on every
// platform. xoshiro256++ core seeded through splitmix64; all distribution
// transforms below are fixed algorithms (no implementation-defined library
// distributions).
class RngState {
 public:
  explicit RngState(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double uniform01();  // in [0, 1), 53-bit resolution
  double uniform(double lo, double hi);
  // Poisson count by exponential-interarrival accumulation, O(mean).
  long long poisson(double mean);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
};

}  // namespace bandlim
