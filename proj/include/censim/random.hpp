#pragma once

#include <cstdint>

namespace censim {

// Counter-derived pseudo-random stream (splitmix64 core).
//
// Substream i of a master seed is a pure function of (seed, i), so a batch of
// trials produces the same draws no matter how the trials are scheduled
// across threads. A stream is cheap to construct and must not be shared
// between concurrent tasks; give each task its own substream.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(mix(seed + kGamma)) {}

  static RandomStream substream(std::uint64_t seed, std::uint64_t index) {
    RandomStream s(seed);
    s.state_ = mix(s.state_ + mix(index + kGamma));
    return s;
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform draw in [0, 1) with 53 random bits.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace censim
