#include "odorbench/signature.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "odorbench/errors.hpp"
#include "odorbench/random.hpp"

namespace odorbench {

Signature::Signature(std::vector<Level> values, Level vmax) : values_(std::move(values)), vmax_(vmax) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] > vmax_) {
      throw DataError("signature value " + std::to_string(values_[i]) + " at index " +
                      std::to_string(i) + " exceeds vmax " + std::to_string(vmax_));
    }
  }
}

TemplateLibrary::TemplateLibrary(std::vector<Template> templates) : templates_(std::move(templates)) {
  if (templates_.empty()) throw ConfigError("template library must contain at least one template");
  length_ = templates_.front().signature.size();
  vmax_ = templates_.front().signature.vmax();
  if (length_ == 0) throw InputShapeError("template signatures must be non-empty");
  std::set<std::string> seen;
  for (const auto& t : templates_) {
    if (!seen.insert(t.label).second) throw ConfigError("duplicate template label '" + t.label + "'");
    if (t.signature.size() != length_ || t.signature.vmax() != vmax_) {
      throw InputShapeError("template '" + t.label + "' has n=" + std::to_string(t.signature.size()) +
                            ", vmax=" + std::to_string(t.signature.vmax()) + "; library expects n=" +
                            std::to_string(length_) + ", vmax=" + std::to_string(vmax_));
    }
  }
}

void TemplateLibrary::RequireCompatible(const Signature& s) const {
  if (s.size() != length_ || s.vmax() != vmax_) {
    throw InputShapeError("signature has n=" + std::to_string(s.size()) + ", vmax=" +
                          std::to_string(s.vmax()) + "; library expects n=" + std::to_string(length_) +
                          ", vmax=" + std::to_string(vmax_));
  }
}

void QuantizerConfig::Validate() const {
  if (levels < 2) throw ConfigError("quantizer needs at least 2 levels");
  if (levels - 1 > static_cast<int>(UINT16_MAX)) throw ConfigError("quantizer level count too large");
  if (!std::isfinite(feature_min) || !std::isfinite(feature_max) || !(feature_min < feature_max)) {
    throw ConfigError("quantizer requires finite feature_min < feature_max");
  }
}

Signature Quantize(std::span<const double> features, const QuantizerConfig& config,
                   std::size_t expected_length) {
  config.Validate();
  if (features.size() != expected_length) {
    throw InputShapeError("feature vector has length " + std::to_string(features.size()) +
                          ", expected " + std::to_string(expected_length));
  }
  const double range = config.feature_max - config.feature_min;
  const auto top = static_cast<Level>(config.levels - 1);
  std::vector<Level> out;
  out.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double x = features[i];
    if (!std::isfinite(x)) throw DataError("non-finite feature at index " + std::to_string(i));
    const double clipped = std::clamp(x, config.feature_min, config.feature_max);
    const double bin = std::floor((clipped - config.feature_min) / range * config.levels);
    out.push_back(static_cast<Level>(std::min(bin, static_cast<double>(top))));
  }
  return Signature(std::move(out), top);
}

std::vector<double> DequantizeMidpoint(const Signature& s, const QuantizerConfig& config) {
  config.Validate();
  const double width = (config.feature_max - config.feature_min) / config.levels;
  std::vector<double> out;
  out.reserve(s.size());
  for (Level v : s.values()) out.push_back(config.feature_min + (v + 0.5) * width);
  return out;
}

TemplateLibrary BuildLibrary(const SampleMap& samples, std::uint64_t seed) {
  if (samples.empty()) throw ConfigError("no labels to build a library from");
  std::vector<Template> chosen;
  chosen.reserve(samples.size());
  std::uint64_t label_index = 0;
  for (const auto& [label, candidates] : samples) {
    if (candidates.empty()) throw ConfigError("label '" + label + "' has no candidate signatures");
    StreamRng rng(SeedSpec{seed, 0, label_index++});
    chosen.push_back({label, candidates[rng.Below(candidates.size())]});
  }
  return TemplateLibrary(std::move(chosen));
}

}  // namespace odorbench
