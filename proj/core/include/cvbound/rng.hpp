#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "cvbound/coherent.hpp"

namespace cvbound {

/// SplitMix64 finalizer. Used to expand seeds into generator states.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ (Blackman & Vigna).
///
/// Stream derivation: stream `k` of seed `s` starts from the SplitMix64
/// sequence seeded with mix64(s) ^ mix64(k + 0x9e3779b97f4a7c15); its first
/// four outputs are the state words. Parallel work is split into fixed
/// chunks with one stream each, so results depend only on (seed, chunk),
/// never on which thread ran the chunk.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0) noexcept {
    std::uint64_t sm = mix64(seed) ^ mix64(stream + 0x9e3779b97f4a7c15ULL);
    for (auto& word : state_) {
      sm += 0x9e3779b97f4a7c15ULL;
      word = mix64(sm);
    }
  }

  result_type operator()() noexcept {
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

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_positive() noexcept { return 1.0 - uniform(); }

  /// Uniform index in [0, n) by 128-bit multiply (Lemire, without rejection;
  /// bias is below n / 2^64).
  std::uint64_t index(std::uint64_t n) noexcept {
    __extension__ using wide = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<wide>((*this)()) * n) >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

/// Complex amplitude whose squared modulus is exponential with the given
/// mean and whose phase is uniform: a circular complex Gaussian with
/// variance mean/2 per component (Box-Muller in polar form).
inline ComplexAmp circular_gaussian(Xoshiro256pp& rng, double mean_norm) {
  const double radius = std::sqrt(-mean_norm * std::log(rng.uniform_positive()));
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  return std::polar(radius, angle);
}

}  // namespace cvbound
