#include "bandlim/rng.hpp"

#include <cmath>

#include "bandlim/errors.hpp"

namespace bandlim {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngState::RngState(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  std::uint64_t mix = seed;
  s_[0] = splitmix64(mix);
  s_[1] = splitmix64(mix);
  mix ^= 0x5851f42d4c957f2dULL * (stream + 1);
  s_[2] = splitmix64(mix);
  s_[3] = splitmix64(mix);
  // avoid the all-zero state, which xoshiro cannot leave
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[3] = 1;
}

std::uint64_t RngState::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngState::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngState::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

long long RngState::poisson(double mean) {
  if (!(mean >= 0.0)) fail(errc::invalid_intensity, "poisson mean must be nonnegative");
  if (mean == 0.0) return 0;
  if (mean > 1e7) fail(errc::invalid_intensity, "poisson mean too large for counting sampler");
  long long count = 0;
  double elapsed = 0.0;
  while (true) {
    double u = uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    elapsed += -std::log(u) / mean;
    if (elapsed > 1.0) return count;
    ++count;
  }
}

}  // namespace bandlim
