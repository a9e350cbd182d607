#pragma once

#include <cstdint>

namespace trustlab {

// Counter-based randomness. Every draw is a pure function of
// (seed, stream, counter), so any party holding the seed derives identical
// values in any order. Honest agents use this as the shared random beacon;
// nature and adversaries get their own stream ids off the same master seed.
class Beacon {
 public:
  explicit Beacon(uint64_t seed) : seed_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t bits(uint64_t stream, uint64_t counter) const {
    return mix(mix(seed_ ^ kStreamSalt * stream, counter), kFinalSalt);
  }

  // Uniform in [0, 1).
  double uniform(uint64_t stream, uint64_t counter) const {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
  uint64_t below(uint64_t stream, uint64_t counter, uint64_t n) const {
    return bits(stream, counter) % n;
  }

  static uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  static uint64_t mix(uint64_t a, uint64_t b) {
    return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
  }

  static constexpr uint64_t kStreamSalt = 0xd6e8feb86659fd93ULL;
  static constexpr uint64_t kFinalSalt = 0x2545f4914f6cdd1dULL;

  uint64_t seed_;
};

// Stream ids used across the simulator.
namespace stream {
inline constexpr uint64_t kBeacon = 1;      // shared interaction coin
inline constexpr uint64_t kNaturePair = 2;  // pair selection
inline constexpr uint64_t kNaturePayoff = 3;
inline constexpr uint64_t kAgentBase = 1000;  // + user id
}  // namespace stream

}  // namespace trustlab
