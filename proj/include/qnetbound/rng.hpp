#pragma once

#include <cstdint>

namespace qnetbound {

// SplitMix64 (Steele/Lea/Flood). Tiny, fast, and splittable: every
// (seed, stream index) pair opens an independent deterministic substream,
// which is what keeps parallel simulation reproducible regardless of how
// trials are scheduled onto threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  // Finalizer of the generator; also used to scramble substream seeds.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Stream dedicated to one unit of work (e.g. one simulation trial).
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix(seed + 0x9e3779b97f4a7c15ULL * (index + 1)));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform on the open interval (0,1). Uses 52 random bits offset by half a
  // step: (k + 0.5) * 2^-52 with k < 2^52 is exactly representable and never
  // rounds to 0 or 1, so callers may take logarithms without guards.
  double next_unit_open() {
    return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
  }

 private:
  std::uint64_t state_;
};

}  // namespace qnetbound
