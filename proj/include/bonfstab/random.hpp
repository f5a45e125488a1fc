#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace bonfstab {

/// SplitMix64 finalizer; used only to derive keys and seed state.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
  z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
  return z ^ (z >> 31);
}

/// Folds a sequence of key words into one 64-bit stream key. Distinct key tuples give
/// unrelated keys, so each (seed, replicate, group) owns its own stream.
constexpr std::uint64_t derive_stream_key(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = UINT64_C(0x6A09E667F3BCC909);
  for (const std::uint64_t w : words) {
    h = splitmix64_mix(h + UINT64_C(0x9E3779B97F4A7C15) + splitmix64_mix(w));
  }
  return h;
}

/// xoshiro256** seeded from a stream key through SplitMix64.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t key) noexcept {
    std::uint64_t z = key;
    for (auto& word : state_) {
      z += UINT64_C(0x9E3779B97F4A7C15);
      word = splitmix64_mix(z);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
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

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform_open_closed() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

/// Standard normal deviates by the Box-Muller transform. Written out rather than using
/// std::normal_distribution so that streams are identical across standard libraries.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t key) noexcept : engine_(key) {}

  double operator()() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = engine_.uniform_open_closed();
    const double u2 = engine_.uniform_open_closed();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  Xoshiro256 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bonfstab
