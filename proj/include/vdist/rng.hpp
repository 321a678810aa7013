#pragma once

#include <cstdint>

namespace vdist {

// One step of the splitmix64 sequence. Used to expand a user seed into
// generator state; also usable on its own for cheap hashing.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ with splitmix64 seeding. Self-contained so that streams are
// bitwise reproducible on every platform, which the simulation harness
// depends on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : state_) w = splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform draw strictly inside (0, 1); never returns an endpoint, so it is
  // safe under log().
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

// Seed for replicate `index` of a run seeded with `base`. XOR derivation keeps
// parallel schedules equal to serial ones.
inline std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t index) {
  return base ^ index;
}

}  // namespace vdist
