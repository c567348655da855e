#pragma once

#include <cstdint>

namespace hu {

// splitmix64: the usual 64-bit mixing generator (Steele/Lea/Flood constants).
// state advances by the golden-gamma 0x9E3779B97F4A7C15; output is the
// xor-shift-multiply finalizer. All randomized suites seed one of these
// explicitly, so runs are reproducible across platforms.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) via the 128-bit multiply-shift reduction.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Independent stream for a subtask.
  SplitMix64 split() { return SplitMix64(next() ^ 0x5851F42D4C957F2Dull); }

private:
  std::uint64_t state_;
};

}  // namespace hu
