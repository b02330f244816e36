#pragma once

#include <array>
#include <concepts>
#include <cstdint>

namespace sinkpi {

// SplitMix64 (Steele, Lea & Flood 2014). One 64-bit word of state; used here
// to expand a single seed into engine state and to derive substream seeds.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman & Vigna 2018), period 2^256 - 1. The four state
// words are the first four outputs of SplitMix64 run on the seed, which is the
// seeding procedure recommended by the authors. A given seed therefore defines
// one reproducible stream; see the reference outputs in the test suite.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform variate on the open interval (0,1). The top 53 bits give a
  // multiple of 2^-53 in [0,1); an exact zero is redrawn so that log(u) and
  // similar downstream expressions stay finite. 1.0 is unreachable.
  double next_open01() noexcept {
    for (;;) {
      const double u =
          static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
      if (u != 0.0) return u;
    }
  }

  // UniformRandomBitGenerator interface.
  std::uint64_t operator()() noexcept { return next_u64(); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
};

// Anything that yields uniform doubles on open (0,1). Samplers are templated
// on this so tests can substitute scripted sources.
template <typename R>
concept RandomSource = requires(R& r) {
  { r.next_open01() } -> std::convertible_to<double>;
};

// Seed for an independent substream (e.g. one per column in parallel angle
// generation). Mixes the index through SplitMix64 so neighbouring indices do
// not yield correlated engine states.
inline std::uint64_t derive_substream_seed(std::uint64_t master_seed,
                                           std::uint64_t index) noexcept {
  SplitMix64 sm(master_seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  return sm.next();
}

}  // namespace sinkpi
