#pragma once

#include <cstdint>

namespace relalg {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Sequential SplitMix64 stream, used for random trials and generator sets.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }
  /// Uniform in [0, bound) up to the usual modulo bias.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

/// Random-access class assignment for cross pairs (x, y') of a doubled base
/// D x D', |D| = d:
///   class(x, y) = 1 + mix64(seed ^ ((x * d + y + 1) * golden)) mod n.
/// Arithmetic is mod 2^64; the modulo bias is below 2^-60 for n < 16.
struct PartitionRecipe {
  std::uint64_t seed = 0;
  unsigned n = 1;
  std::uint64_t d = 0;

  unsigned class_of(std::uint64_t x, std::uint64_t y) const {
    const std::uint64_t edge = x * d + y + 1;
    return 1 + static_cast<unsigned>(mix64(seed ^ (edge * kGoldenGamma)) % n);
  }
};

}  // namespace relalg
