#pragma once

#include <cstdint>
#include <random>

namespace odorbench {

// splitmix64 finalizer; a fixed, platform-independent 64-bit mix.
[[nodiscard]] constexpr std::uint64_t Mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Identifies one independent random stream: a base seed plus a structured
// (simulation, sample) path. Identical specs always yield identical streams.
struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t simulation = 0;
  std::uint64_t sample = 0;

  // Mix64(Mix64(Mix64(base) ^ simulation) ^ sample)
  [[nodiscard]] constexpr std::uint64_t StreamSeed() const noexcept {
    return Mix64(Mix64(Mix64(base_seed) ^ simulation) ^ sample);
  }

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// Deterministic generator for one stream. The engine (mt19937_64) has a
// standardized output sequence; the bounded and real draws below are
// implemented here rather than via <random> distributions, whose outputs
// are implementation-defined.
class StreamRng {
 public:
  explicit StreamRng(const SeedSpec& spec) : engine_(spec.StreamSeed()) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be >= 1.
  std::uint64_t Below(std::uint64_t bound) {
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t x = engine_();
    while (x > limit) x = engine_();
    return x % bound;
  }

  // Uniform real in [0, 1) with 53 random bits.
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Unit(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace odorbench
