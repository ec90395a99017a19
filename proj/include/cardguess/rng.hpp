#pragma once

#include <array>
#include <cstdint>

namespace cardguess {

// Counter-based splittable random stream: a 64-bit master seed plus a stream
// index deterministically derive an independent generator, so trial k always
// sees the same randomness no matter which thread runs it.
//
// The core generator is xoshiro256++ seeded through a splitmix64 expansion of
// (seed, stream). Bounded draws use unbiased multiply-shift rejection, so the
// uniform shuffle law downstream is exact.
class rng_stream {
 public:
  explicit rng_stream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t x = seed ^ mix64(stream + 0x9E3779B97F4A7C15ULL);
    for (auto& word : state_) {
      x += 0x9E3779B97F4A7C15ULL;
      word = mix64(x);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next() {
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

  // Uniform in [0, bound); bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  // splitmix64 finalizer
  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace cardguess
