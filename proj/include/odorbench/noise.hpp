#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "odorbench/random.hpp"
#include "odorbench/signature.hpp"

namespace odorbench {

enum class NoiseKind { kImpulse, kAdditive, kRandomReplace };

// Parameterized corruption process. CLI grammar:
//   impulse:P        fixed occlusion fraction P in [0, 1]
//   impulse:LO-HI    fraction drawn per sample, uniform on [LO, HI)
//   additive:K       add K to every element, saturating at vmax
//   random           replace the sample with a uniform random signature
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kImpulse;
  double impulse_lo = 0.2;
  double impulse_hi = 0.8;
  Level offset = 0;

  [[nodiscard]] static NoiseSpec Impulse(double p) { return {NoiseKind::kImpulse, p, p, 0}; }
  [[nodiscard]] static NoiseSpec ImpulseRange(double lo, double hi) {
    return {NoiseKind::kImpulse, lo, hi, 0};
  }
  [[nodiscard]] static NoiseSpec Additive(Level k) { return {NoiseKind::kAdditive, 0.0, 0.0, k}; }
  [[nodiscard]] static NoiseSpec RandomReplace() { return {NoiseKind::kRandomReplace, 0.0, 0.0, 0}; }

  // Throws ConfigError for impulse bounds outside [0, 1] or lo > hi.
  void Validate() const;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

// Throws ConfigError naming the accepted grammar.
[[nodiscard]] NoiseSpec ParseNoiseSpec(std::string_view text);
// Canonical text form; ParseNoiseSpec(ToString(spec)) == spec.
[[nodiscard]] std::string ToString(const NoiseSpec& spec);

inline constexpr std::string_view kNoiseGrammar =
    "impulse:P | impulse:LO-HI | additive:K | random";

// round-half-to-even(p * n).
[[nodiscard]] std::size_t OcclusionCount(double p, std::size_t n);

struct Occlusion {
  Signature signature;
  // Selected positions in draw order; replacements may equal the original.
  std::vector<std::size_t> selected;
};

// Selects OcclusionCount(p, n) distinct positions uniformly without
// replacement (partial Fisher-Yates) and redraws each uniformly from
// {0..vmax}. Throws ConfigError if p is outside [0, 1].
[[nodiscard]] Occlusion ImpulseOccludeDetailed(const Signature& s, double p, StreamRng& rng);
[[nodiscard]] Signature ImpulseOcclude(const Signature& s, double p, StreamRng& rng);
[[nodiscard]] Signature ImpulseOcclude(const Signature& s, double p, const SeedSpec& seed);

// Each element becomes min(value + k, vmax).
[[nodiscard]] Signature AdditiveOffset(const Signature& s, Level k);

// Elements i.i.d. uniform on {0..vmax}. Throws ConfigError if n == 0.
[[nodiscard]] Signature RandomSignature(std::size_t n, Level vmax, StreamRng& rng);
[[nodiscard]] Signature RandomSignature(std::size_t n, Level vmax, const SeedSpec& seed);

// Applies spec to s, consuming rng (impulse level draw first, then
// positions, then replacement values).
[[nodiscard]] Signature ApplyNoise(const NoiseSpec& spec, const Signature& s, StreamRng& rng);

}  // namespace odorbench
