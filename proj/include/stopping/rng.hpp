#pragma once

#include <cstdint>

namespace stopping {

/// splitmix64: stateless 64-bit mixer used to expand a user seed into
/// generator state.  Standard constants from the reference implementation.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ — small, fast, platform-stable 64-bit PRNG.
///
/// The (seed, stream) constructor derives independent state for each Monte
/// Carlo shard: state words come from a splitmix64 sequence keyed by the
/// user seed XOR a multiplied stream index, so shard i's draws depend only
/// on (seed, i) and results are identical for any shard partition.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0) noexcept {
    std::uint64_t sm = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next() noexcept {
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

  /// Uniform double strictly inside (0, 1): 53-bit mantissa offset by 1/2 ulp
  /// so 0 and 1 are never produced (safe to feed quantile functions, and the
  /// antithetic partner 1-u stays inside the open interval too).
  double uniform01() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace stopping
