// rng.hpp
// Deterministic, platform-independent pseudo-random generation.
//
// splitmix64 (Steele, Lea, Flood) is used for seeding and stream
// derivation; xoshiro256** (Blackman & Vigna) is the main generator.
// Both are pure 64-bit integer algorithms, so every stream is
// bit-identical across platforms and compilers.
//
// Stream-splitting rule: the stream for (base_seed, stream_id) is a
// xoshiro256** generator whose 256-bit state is expanded by splitmix64
// from the single seed
//
//     mix64(base_seed + (stream_id + 1) * golden_gamma)
//
// i.e. the (stream_id + 1)-th output of the splitmix64 sequence started
// at base_seed. Distinct stream ids give decorrelated states.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace wblsense {

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

// splitmix64 output finalizer: a bijective avalanche mix on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += golden_gamma;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& s : state_) s = sm.next();
  }

  std::uint64_t next() noexcept {
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

  // UniformRandomBitGenerator interface (handy for std::shuffle in tests).
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }
  result_type operator()() noexcept { return next(); }

  // Unbiased integer in [0, bound) via rejection sampling.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform_real() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool uniform_bit() noexcept { return (next() >> 63) != 0; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

// See the stream-splitting rule in the header comment.
inline Xoshiro256StarStar make_stream(std::uint64_t base_seed, std::uint64_t stream_id) noexcept {
  return Xoshiro256StarStar(mix64(base_seed + (stream_id + 1) * golden_gamma));
}

}  // namespace wblsense
