#pragma once

#include <cstdint>

namespace episis {

// Deterministic, platform-independent generator (splitmix64).  Every random
// quantity in the toolkit is drawn from a substream derived from the single
// run seed via mix_seed, so adding a new consumer never perturbs existing
// draws.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [lo, hi], inclusive.  Modulo bias is negligible for
  // the small ranges used here but we reject out of caution anyway.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return lo + static_cast<int>(v % span);
  }

private:
  std::uint64_t state_;
};

// Derives an independent substream seed from (seed, stream tag).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  Rng r(seed ^ (0x6a09e667f3bcc909ull * (stream + 1)));
  return r.next_u64();
}

// Substream tags.  Keep stable: changing them changes every seeded artifact.
inline constexpr std::uint64_t kStreamX0 = 1;
inline constexpr std::uint64_t kStreamAlpha = 2;
inline constexpr std::uint64_t kStreamTieBreak = 3;
inline constexpr std::uint64_t kStreamNetwork = 4;

}  // namespace episis
