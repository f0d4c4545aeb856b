#include "odorbench/noise.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <system_error>

#include "odorbench/errors.hpp"

namespace odorbench {
namespace {

[[noreturn]] void BadNoise(std::string_view text, std::string_view why) {
  throw ConfigError("invalid noise spec '" + std::string(text) + "': " + std::string(why) +
                    " (accepted: " + std::string(kNoiseGrammar) + ")");
}

double ParseFraction(std::string_view whole, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) BadNoise(whole, "expected a number");
  return value;
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

void NoiseSpec::Validate() const {
  if (kind != NoiseKind::kImpulse) return;
  if (!(impulse_lo >= 0.0 && impulse_hi <= 1.0 && impulse_lo <= impulse_hi)) {
    throw ConfigError("impulse occlusion level must satisfy 0 <= lo <= hi <= 1");
  }
}

NoiseSpec ParseNoiseSpec(std::string_view text) {
  if (text == "random") return NoiseSpec::RandomReplace();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) BadNoise(text, "missing ':'");
  const auto kind = text.substr(0, colon);
  const auto params = text.substr(colon + 1);

  if (kind == "additive") {
    unsigned k = 0;
    const auto* end = params.data() + params.size();
    const auto [ptr, ec] = std::from_chars(params.data(), end, k);
    if (ec != std::errc{} || ptr != end || params.empty() || k > UINT16_MAX) {
      BadNoise(text, "additive offset must be a non-negative integer");
    }
    return NoiseSpec::Additive(static_cast<Level>(k));
  }
  if (kind == "impulse") {
    NoiseSpec spec;
    // A '-' after the first character separates a range; a leading '-' is a sign.
    const auto dash = params.find('-', 1);
    if (dash == std::string_view::npos) {
      spec = NoiseSpec::Impulse(ParseFraction(text, params));
    } else {
      spec = NoiseSpec::ImpulseRange(ParseFraction(text, params.substr(0, dash)),
                                     ParseFraction(text, params.substr(dash + 1)));
    }
    try {
      spec.Validate();
    } catch (const ConfigError& e) {
      BadNoise(text, e.what());
    }
    return spec;
  }
  BadNoise(text, "unknown kind '" + std::string(kind) + "'");
}

std::string ToString(const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseKind::kRandomReplace:
      return "random";
    case NoiseKind::kAdditive:
      return "additive:" + std::to_string(spec.offset);
    case NoiseKind::kImpulse:
      if (spec.impulse_lo == spec.impulse_hi) return "impulse:" + FormatDouble(spec.impulse_lo);
      return "impulse:" + FormatDouble(spec.impulse_lo) + "-" + FormatDouble(spec.impulse_hi);
  }
  return "unknown";
}

std::size_t OcclusionCount(double p, std::size_t n) {
  // std::nearbyint honours the current rounding mode, so do the
  // half-to-even step explicitly.
  const double x = p * static_cast<double>(n);
  const double lower = std::floor(x);
  const double frac = x - lower;
  double rounded = lower;
  if (frac > 0.5 || (frac == 0.5 && std::fmod(lower, 2.0) != 0.0)) rounded = lower + 1.0;
  return static_cast<std::size_t>(rounded);
}

Occlusion ImpulseOccludeDetailed(const Signature& s, double p, StreamRng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("impulse occlusion fraction must lie in [0, 1], got " + std::to_string(p));
  }
  const std::size_t n = s.size();
  const std::size_t count = OcclusionCount(p, n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.Below(n - i));
    std::swap(order[i], order[j]);
  }
  order.resize(count);

  std::vector<Level> values(s.values().begin(), s.values().end());
  for (std::size_t idx : order) {
    values[idx] = static_cast<Level>(rng.Below(std::uint64_t{s.vmax()} + 1));
  }
  return {Signature(std::move(values), s.vmax()), std::move(order)};
}

Signature ImpulseOcclude(const Signature& s, double p, StreamRng& rng) {
  return ImpulseOccludeDetailed(s, p, rng).signature;
}

Signature ImpulseOcclude(const Signature& s, double p, const SeedSpec& seed) {
  StreamRng rng(seed);
  return ImpulseOcclude(s, p, rng);
}

Signature AdditiveOffset(const Signature& s, Level k) {
  std::vector<Level> values;
  values.reserve(s.size());
  for (Level v : s.values()) {
    const unsigned raised = unsigned{v} + k;
    values.push_back(static_cast<Level>(std::min<unsigned>(raised, s.vmax())));
  }
  return Signature(std::move(values), s.vmax());
}

Signature RandomSignature(std::size_t n, Level vmax, StreamRng& rng) {
  if (n == 0) throw ConfigError("random signature length must be at least 1");
  std::vector<Level> values(n);
  for (auto& v : values) v = static_cast<Level>(rng.Below(std::uint64_t{vmax} + 1));
  return Signature(std::move(values), vmax);
}

Signature RandomSignature(std::size_t n, Level vmax, const SeedSpec& seed) {
  StreamRng rng(seed);
  return RandomSignature(n, vmax, rng);
}

Signature ApplyNoise(const NoiseSpec& spec, const Signature& s, StreamRng& rng) {
  switch (spec.kind) {
    case NoiseKind::kImpulse: {
      const double p = spec.impulse_lo == spec.impulse_hi
                           ? spec.impulse_lo
                           : rng.Uniform(spec.impulse_lo, spec.impulse_hi);
      return ImpulseOcclude(s, p, rng);
    }
    case NoiseKind::kAdditive:
      return AdditiveOffset(s, spec.offset);
    case NoiseKind::kRandomReplace:
      return RandomSignature(s.size(), s.vmax(), rng);
  }
  throw ConfigError("unknown noise kind");
}

}  // namespace odorbench
