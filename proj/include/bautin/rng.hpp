#pragma once

#include <cstdint>

namespace bautin {

/// SplitMix64 (Steele, Lea and Flood 2014): a Weyl-sequence counter
/// advanced by 0x9E3779B97F4A7C15 and passed through a 64-bit finaliser.
/// Output depends only on the seed and the draw index, on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Standard normal deviates by the Box-Muller transform, consumed in pairs:
/// the cosine branch first, then the sine branch.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : bits_(seed) {}

  double next();

 private:
  SplitMix64 bits_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace bautin
