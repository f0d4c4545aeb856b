#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "odorbench/library_io.hpp"
#include "odorbench/signature.hpp"

namespace odorbench {

inline constexpr std::size_t kSensorCount = 72;

enum class FeatureExtractor { kMaxResponse, kMeanSteadyWindow };

// How trial files are located, mapped onto sensors, and reduced to
// signatures. The file layout is configuration: column_map[i] is the
// zero-based file column feeding sensor i.
struct IngestConfig {
  std::vector<std::size_t> column_map;
  FeatureExtractor extractor = FeatureExtractor::kMaxResponse;
  // Row range [window_start, window_end) for kMeanSteadyWindow; the end is
  // clipped to the trial length.
  std::size_t window_start = 0;
  std::size_t window_end = 0;
  QuantizerConfig quantizer;
  // When set, feature_min/feature_max are fitted to the observed features
  // of all parsed trials before quantizing.
  bool fit_quantizer_range = false;
  // Filters; empty means "accept all".
  std::vector<std::string> odorants;
  std::vector<std::string> locations;
  std::string date_prefix;
  std::string file_glob = "*";

  // Default wind-tunnel layout: column 0 time, 1 temperature, 2 relative
  // humidity, then 9 boards x 8 sensors in columns 3..74.
  [[nodiscard]] static IngestConfig Default();

  // Throws ConfigError unless the map covers exactly kSensorCount sensors
  // and the window and quantizer are valid.
  void Validate() const;

  [[nodiscard]] Json ToJson() const;
};

struct TrialRecord {
  std::string label;
  // Path relative to the ingest root, with '/' separators.
  std::string source;
  // Leading digits of the file name (acquisition timestamp), if any.
  std::string acquisition;
  // channels[sensor][row]
  std::vector<std::vector<double>> channels;
};

struct FileIssue {
  std::string file;
  std::string message;
};

struct ParseResult {
  std::vector<TrialRecord> trials;
  std::vector<std::string> source_files;
  // Malformed lines skipped inside otherwise usable files.
  std::size_t warnings = 0;
  std::vector<FileIssue> warning_details;
  // Files skipped entirely.
  std::vector<FileIssue> file_errors;
};

// Walks root recursively in sorted path order. The odorant label is the
// first directory below root (or the file stem for files directly in
// root). Lines that are blank or start with '#' are ignored; lines lacking
// a finite value for any mapped column are skipped and counted as
// warnings; files with no usable line are reported in file_errors.
// Throws IoError if root is not a readable directory.
[[nodiscard]] ParseResult ParseTrials(const std::filesystem::path& root, const IngestConfig& config);

// One scalar per channel. Throws DataError naming an empty channel.
[[nodiscard]] std::vector<double> ExtractFeatures(const TrialRecord& trial, const IngestConfig& config);

// ExtractFeatures followed by Quantize with config.quantizer.
[[nodiscard]] Signature Featurize(const TrialRecord& trial, const IngestConfig& config);

// Smallest range covering every extracted feature, keeping config.quantizer.levels.
[[nodiscard]] QuantizerConfig FitQuantizer(const std::vector<TrialRecord>& trials,
                                           const IngestConfig& config);

// Groups featurized trials by label, applying FitQuantizer first when
// config.fit_quantizer_range is set.
[[nodiscard]] SampleMap FeaturizeAll(const std::vector<TrialRecord>& trials, IngestConfig config);

struct SynthesisConfig {
  std::size_t num_odorants = 10;
  std::size_t trials_per_odorant = 20;
  std::size_t n = kDefaultLength;
  Level vmax = kDefaultVmax;
  std::uint64_t seed = 0;
  // Every prototype pair must have ManhattanSimilarity strictly below this.
  double separation_bound = 0.5;
  // Per-element probability that a trial moves one level off its prototype.
  double jitter_probability = 0.1;
  std::size_t max_search_steps = 200000;

  void Validate() const;
};

struct SyntheticDataset {
  std::vector<Template> prototypes;
  SampleMap samples;
};

// Two-level prototypes (values 0 and vmax - 1, split as evenly as possible
// at each position) refined by local search until every pair satisfies the
// separation bound, plus jittered trials kept within [0, vmax - 1]. Labels
// are the ten wind-tunnel analytes for num_odorants <= 10, odorant_NN
// otherwise. Throws ConfigError when the bound is not reached within
// max_search_steps.
[[nodiscard]] SyntheticDataset SynthesizeDataset(const SynthesisConfig& config);

[[nodiscard]] std::vector<std::string> SyntheticLabels(std::size_t count);

}  // namespace odorbench
