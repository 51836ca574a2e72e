#pragma once

#include <array>
#include <cstdint>

namespace uclsim {

// splitmix64 step (Vigna, public domain); used to expand seeds into state.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

// xoshiro256++ (Blackman & Vigna, public domain). One instance per
// simulation replication, derived counter-style from
// (master seed, stream salt, replication index): any partition of the
// replication range over worker threads reproduces the exact same draws.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) noexcept {
    SplitMix64 mix{seed};
    for (auto& word : state_) word = mix.next();
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  static Xoshiro256pp replication_stream(std::uint64_t master_seed, std::uint64_t salt,
                                         std::uint64_t replication) noexcept {
    std::uint64_t h = avalanche(master_seed + 0x9e3779b97f4a7c15ull);
    h = avalanche(h ^ salt);
    h = avalanche(h ^ replication);
    return Xoshiro256pp(h);
  }

  std::uint64_t next() noexcept {
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

  // Uniform double in [0, 1), 53 mantissa bits.
  double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, bound) via Lemire's multiply-shift rejection.
  std::uint32_t next_below(std::uint32_t bound) noexcept {
    std::uint32_t x = static_cast<std::uint32_t>(next() >> 32);
    std::uint64_t m = static_cast<std::uint64_t>(x) * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = (0u - bound) % bound;
      while (low < threshold) {
        x = static_cast<std::uint32_t>(next() >> 32);
        m = static_cast<std::uint64_t>(x) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  friend bool operator==(const Xoshiro256pp&, const Xoshiro256pp&) = default;

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t avalanche(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace uclsim
