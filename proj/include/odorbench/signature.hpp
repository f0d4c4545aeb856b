#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace odorbench {

using Level = std::uint16_t;

inline constexpr std::size_t kDefaultLength = 72;
inline constexpr Level kDefaultVmax = 15;

// A fixed-length vector of quantized sensor levels, each in [0, vmax].
// Immutable after construction.
class Signature {
 public:
  Signature() = default;
  // Throws DataError if any value exceeds vmax.
  Signature(std::vector<Level> values, Level vmax);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] Level vmax() const noexcept { return vmax_; }
  [[nodiscard]] std::span<const Level> values() const noexcept { return values_; }
  [[nodiscard]] Level operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Level> values_;
  Level vmax_ = kDefaultVmax;
};

struct Template {
  std::string label;
  Signature signature;

  friend bool operator==(const Template&, const Template&) = default;
};

// Ordered, labeled set of signatures sharing n and vmax. Order is
// significant: classifiers break ties toward the lowest index.
class TemplateLibrary {
 public:
  TemplateLibrary() = default;
  // Throws ConfigError on an empty list or duplicate labels and
  // InputShapeError when members disagree on n or vmax.
  explicit TemplateLibrary(std::vector<Template> templates);

  [[nodiscard]] std::size_t size() const noexcept { return templates_.size(); }
  [[nodiscard]] bool empty() const noexcept { return templates_.empty(); }
  [[nodiscard]] std::size_t length() const noexcept { return length_; }
  [[nodiscard]] Level vmax() const noexcept { return vmax_; }
  [[nodiscard]] const Template& operator[](std::size_t i) const { return templates_[i]; }
  [[nodiscard]] const std::vector<Template>& templates() const noexcept { return templates_; }

  // Throws InputShapeError unless s has this library's length and vmax.
  void RequireCompatible(const Signature& s) const;

  friend bool operator==(const TemplateLibrary&, const TemplateLibrary&) = default;

 private:
  std::vector<Template> templates_;
  std::size_t length_ = 0;
  Level vmax_ = 0;
};

struct QuantizerConfig {
  int levels = 16;
  double feature_min = 0.0;
  double feature_max = 1.0;

  // Throws ConfigError unless levels >= 2 and feature_min < feature_max.
  void Validate() const;
};

// Maps each feature to floor((clip(x) - min) / (max - min) * levels),
// clamped to levels - 1. Out-of-range features are clipped, not rejected.
// Throws InputShapeError if the length differs from expected_length and
// DataError on a non-finite feature.
[[nodiscard]] Signature Quantize(std::span<const double> features, const QuantizerConfig& config,
                                 std::size_t expected_length);

// Centre of each signature level's bin in feature space.
[[nodiscard]] std::vector<double> DequantizeMidpoint(const Signature& s,
                                                     const QuantizerConfig& config);

using SampleMap = std::map<std::string, std::vector<Signature>>;

// Picks one candidate per label uniformly at random. Labels are visited in
// lexicographic order; label i (0-based in that order) draws its index from
// the stream SeedSpec{seed, 0, i}. The result is ordered by label.
[[nodiscard]] TemplateLibrary BuildLibrary(const SampleMap& samples, std::uint64_t seed);

}  // namespace odorbench
