#ifndef MIXNORM_RNG_HPP
#define MIXNORM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace mixnorm {

// Deterministic, cross-platform random streams. The standard <random>
// distributions are not pinned down by the C++ standard, so experiments
// seeded here would not reproduce across library implementations; instead
// we fix the full algorithm:
//
//   state seeding  — SplitMix64 (Steele/Lea/Flood) over seed ^ golden-ratio
//                    multiples of (stream index + 1), four outputs filling
//                    the xoshiro state;
//   generator      — xoshiro256** 1.0 (Blackman/Vigna), public domain;
//   uniform [0,1)  — top 53 bits scaled by 2^-53;
//   normal         — Marsaglia polar method on uniform pairs;
//   signs          — one uniform bit from the top of the next output.
//
// Independent streams are derived from (seed, stream), so work items can be
// dispatched to any number of workers without changing any stream's output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
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

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // ±1 with equal probability.
  int sign() { return (next_u64() >> 63) ? -1 : 1; }

  // Standard normal by the Marsaglia polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    have_spare_ = true;
    return u * factor;
  }

  // Uniform integer in [0, n), n ≥ 1, by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4]{};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mixnorm

#endif  // MIXNORM_RNG_HPP
