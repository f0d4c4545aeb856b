#include "odorbench/ingest.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "odorbench/errors.hpp"
#include "odorbench/random.hpp"
#include "odorbench/similarity.hpp"

namespace odorbench {
namespace fs = std::filesystem;
namespace {

constexpr std::string_view kDelimiters = ",; \t\r";

// Splits on any run of delimiters and parses every token; a token that is
// not a complete number becomes NaN.
std::vector<double> ParseRow(std::string_view line) {
  std::vector<double> row;
  std::size_t pos = line.find_first_not_of(kDelimiters);
  while (pos != std::string_view::npos) {
    const std::size_t end = std::min(line.find_first_of(kDelimiters, pos), line.size());
    const std::string_view token = line.substr(pos, end - pos);
    double value = std::numeric_limits<double>::quiet_NaN();
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      value = std::numeric_limits<double>::quiet_NaN();
    }
    row.push_back(value);
    pos = line.find_first_not_of(kDelimiters, end);
  }
  return row;
}

bool Contains(const std::vector<std::string>& haystack, const std::string& needle) {
  return std::find(haystack.begin(), haystack.end(), needle) != haystack.end();
}

std::string LeadingDigits(const std::string& name) {
  const auto it = std::find_if(name.begin(), name.end(), [](char c) { return c < '0' || c > '9'; });
  return std::string(name.begin(), it);
}

}  // namespace

IngestConfig IngestConfig::Default() {
  IngestConfig config;
  config.column_map.resize(kSensorCount);
  std::iota(config.column_map.begin(), config.column_map.end(), std::size_t{3});
  config.fit_quantizer_range = true;
  return config;
}

void IngestConfig::Validate() const {
  if (column_map.size() != kSensorCount) {
    throw ConfigError("column map must cover exactly " + std::to_string(kSensorCount) +
                      " sensors, got " + std::to_string(column_map.size()));
  }
  if (extractor == FeatureExtractor::kMeanSteadyWindow && window_start >= window_end) {
    throw ConfigError("steady window requires start < end");
  }
  if (!fit_quantizer_range) quantizer.Validate();
  if (quantizer.levels < 2) throw ConfigError("quantizer needs at least 2 levels");
}

Json IngestConfig::ToJson() const {
  Json doc;
  doc["column_map"] = column_map;
  doc["extractor"] = extractor == FeatureExtractor::kMaxResponse ? "max_response" : "mean_steady_window";
  doc["window_start"] = window_start;
  doc["window_end"] = window_end;
  doc["levels"] = quantizer.levels;
  doc["feature_min"] = quantizer.feature_min;
  doc["feature_max"] = quantizer.feature_max;
  doc["fit_quantizer_range"] = fit_quantizer_range;
  doc["odorants"] = odorants;
  doc["locations"] = locations;
  doc["date_prefix"] = date_prefix;
  doc["file_glob"] = file_glob;
  return doc;
}

ParseResult ParseTrials(const fs::path& root, const IngestConfig& config) {
  config.Validate();
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("not a readable directory: " + root.string());

  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
    if (it->is_regular_file(ec)) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());

  const std::size_t widest = *std::max_element(config.column_map.begin(), config.column_map.end());
  ParseResult result;
  for (const auto& file : files) {
    const fs::path rel = file.lexically_relative(root);
    const std::string name = file.filename().string();
    if (fnmatch(config.file_glob.c_str(), name.c_str(), 0) != 0) continue;

    std::vector<std::string> parts;
    for (const auto& p : rel) parts.push_back(p.string());
    const std::string label = parts.size() > 1 ? parts.front() : file.stem().string();
    if (!config.odorants.empty() && !Contains(config.odorants, label)) continue;
    if (!config.locations.empty()) {
      const bool located = std::any_of(parts.begin(), parts.end() - 1,
                                       [&](const std::string& p) { return Contains(config.locations, p); });
      if (!located) continue;
    }
    if (!config.date_prefix.empty() && name.rfind(config.date_prefix, 0) != 0) continue;

    const std::string source = rel.generic_string();
    std::ifstream in(file);
    if (!in) {
      result.file_errors.push_back({source, "cannot open file"});
      continue;
    }

    TrialRecord trial{label, source, LeadingDigits(name),
                      std::vector<std::vector<double>>(kSensorCount)};
    std::size_t skipped = 0;
    std::size_t line_number = 0;
    std::string line;
    while (std::getline(in, line)) {
      ++line_number;
      const auto first = line.find_first_not_of(kDelimiters);
      if (first == std::string::npos || line[first] == '#') continue;
      const std::vector<double> row = ParseRow(line);
      bool usable = row.size() > widest;
      for (std::size_t s = 0; usable && s < kSensorCount; ++s) {
        usable = std::isfinite(row[config.column_map[s]]);
      }
      if (!usable) {
        ++skipped;
        result.warning_details.push_back({source, "skipped malformed line " + std::to_string(line_number)});
        continue;
      }
      for (std::size_t s = 0; s < kSensorCount; ++s) trial.channels[s].push_back(row[config.column_map[s]]);
    }

    if (trial.channels.front().empty()) {
      // The per-line warnings belong to a file that is dropped as a whole.
      result.warning_details.resize(result.warning_details.size() - skipped);
      result.file_errors.push_back({source, "no line with all " + std::to_string(kSensorCount) +
                                                " mapped sensor columns"});
      continue;
    }
    result.warnings += skipped;
    result.source_files.push_back(source);
    result.trials.push_back(std::move(trial));
  }
  return result;
}

std::vector<double> ExtractFeatures(const TrialRecord& trial, const IngestConfig& config) {
  if (trial.channels.size() != kSensorCount) {
    throw InputShapeError("trial '" + trial.source + "' has " + std::to_string(trial.channels.size()) +
                          " channels, expected " + std::to_string(kSensorCount));
  }
  std::vector<double> features;
  features.reserve(kSensorCount);
  for (std::size_t s = 0; s < kSensorCount; ++s) {
    const auto& series = trial.channels[s];
    if (series.empty()) {
      throw DataError("trial '" + trial.source + "': channel " + std::to_string(s) + " is empty");
    }
    if (config.extractor == FeatureExtractor::kMaxResponse) {
      features.push_back(*std::max_element(series.begin(), series.end()));
      continue;
    }
    const std::size_t end = std::min(config.window_end, series.size());
    if (config.window_start >= end) {
      throw DataError("trial '" + trial.source + "': channel " + std::to_string(s) + " has " +
                      std::to_string(series.size()) + " rows, steady window starts at " +
                      std::to_string(config.window_start));
    }
    const double sum = std::accumulate(series.begin() + static_cast<std::ptrdiff_t>(config.window_start),
                                       series.begin() + static_cast<std::ptrdiff_t>(end), 0.0);
    features.push_back(sum / static_cast<double>(end - config.window_start));
  }
  return features;
}

Signature Featurize(const TrialRecord& trial, const IngestConfig& config) {
  return Quantize(ExtractFeatures(trial, config), config.quantizer, kSensorCount);
}

QuantizerConfig FitQuantizer(const std::vector<TrialRecord>& trials, const IngestConfig& config) {
  QuantizerConfig fitted = config.quantizer;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& trial : trials) {
    for (double f : ExtractFeatures(trial, config)) {
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
  }
  if (!(lo < hi)) {
    throw DataError("cannot fit a quantizer range: features do not span a non-empty interval");
  }
  fitted.feature_min = lo;
  fitted.feature_max = hi;
  return fitted;
}

SampleMap FeaturizeAll(const std::vector<TrialRecord>& trials, IngestConfig config) {
  if (config.fit_quantizer_range) {
    config.quantizer = FitQuantizer(trials, config);
    config.fit_quantizer_range = false;
  }
  SampleMap samples;
  for (const auto& trial : trials) samples[trial.label].push_back(Featurize(trial, config));
  return samples;
}

void SynthesisConfig::Validate() const {
  if (num_odorants < 1 || trials_per_odorant < 1 || n < 1) {
    throw ConfigError("synthetic dataset counts must all be >= 1");
  }
  if (num_odorants > 1 && vmax < 2) throw ConfigError("synthetic prototypes need vmax >= 2");
  if (!(separation_bound > 0.0 && separation_bound <= 1.0)) {
    throw ConfigError("separation bound must lie in (0, 1]");
  }
  if (!(jitter_probability >= 0.0 && jitter_probability <= 1.0)) {
    throw ConfigError("jitter probability must lie in [0, 1]");
  }
}

std::vector<std::string> SyntheticLabels(std::size_t count) {
  static const std::vector<std::string> kAnalytes = {
      "Acetaldehyde", "Acetone", "Ammonia", "Benzene", "Butanol",
      "CO", "Ethylene", "Methane", "Methanol", "Toluene"};
  if (count <= kAnalytes.size()) return {kAnalytes.begin(), kAnalytes.begin() + static_cast<std::ptrdiff_t>(count)};
  std::vector<std::string> labels;
  const std::size_t width = std::to_string(count - 1).size();
  for (std::size_t i = 0; i < count; ++i) {
    std::string digits = std::to_string(i);
    labels.push_back("odorant_" + std::string(std::max<std::size_t>(2, width) - digits.size(), '0') + digits);
  }
  return labels;
}

SyntheticDataset SynthesizeDataset(const SynthesisConfig& config) {
  config.Validate();
  const std::size_t k = config.num_odorants;
  const std::size_t n = config.n;
  const Level high = config.vmax == 0 ? 0 : static_cast<Level>(config.vmax - 1);
  const std::size_t group = k / 2;

  // Pair (a, b) is "split" at a position when exactly one of them is high;
  // its distance is high * splits. need = fewest splits meeting the bound.
  const double span = static_cast<double>(n) * config.vmax;
  std::size_t need = 0;
  while (need <= n && 1.0 - static_cast<double>(need * high) / span >= config.separation_bound) ++need;

  StreamRng rng(SeedSpec{config.seed, 2, 0});
  auto draw_row = [&] {
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < group; ++i) std::swap(order[i], order[i + rng.Below(k - i)]);
    std::vector<bool> row(k, false);
    for (std::size_t i = 0; i < group; ++i) row[order[i]] = true;
    return row;
  };
  std::vector<std::vector<bool>> rows(n);
  for (auto& row : rows) row = draw_row();

  std::vector<std::vector<long>> splits(k, std::vector<long>(k, 0));
  for (const auto& row : rows) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) splits[a][b] += row[a] != row[b] ? 1 : 0;
    }
  }
  auto deficit = [&](long c) {
    const long d = std::max(0L, static_cast<long>(need) - c);
    return d * d;
  };
  long cost = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) cost += deficit(splits[a][b]);
  }

  for (std::size_t step = 0; cost > 0 && step < config.max_search_steps; ++step) {
    const std::size_t pos = rng.Below(n);
    std::vector<bool> proposal = draw_row();
    long next = cost;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        const long delta = (proposal[a] != proposal[b] ? 1 : 0) - (rows[pos][a] != rows[pos][b] ? 1 : 0);
        if (delta != 0) next += deficit(splits[a][b] + delta) - deficit(splits[a][b]);
      }
    }
    if (next > cost) continue;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        splits[a][b] += (proposal[a] != proposal[b] ? 1 : 0) - (rows[pos][a] != rows[pos][b] ? 1 : 0);
      }
    }
    rows[pos] = std::move(proposal);
    cost = next;
  }

  SyntheticDataset dataset;
  const auto labels = SyntheticLabels(k);
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<Level> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = rows[i][t] ? high : Level{0};
    dataset.prototypes.push_back({labels[t], Signature(std::move(values), config.vmax)});
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const double s = ManhattanSimilarity(dataset.prototypes[a].signature, dataset.prototypes[b].signature).value();
      if (!(s < config.separation_bound)) {
        throw ConfigError("could not separate " + std::to_string(k) + " prototypes of length " +
                          std::to_string(n) + " below similarity " + std::to_string(config.separation_bound) +
                          " within " + std::to_string(config.max_search_steps) + " search steps");
      }
    }
  }

  for (std::size_t t = 0; t < k; ++t) {
    const Signature& proto = dataset.prototypes[t].signature;
    auto& trials = dataset.samples[labels[t]];
    for (std::size_t i = 0; i < config.trials_per_odorant; ++i) {
      StreamRng jitter(SeedSpec{config.seed, 3, t * config.trials_per_odorant + i});
      std::vector<Level> values(proto.values().begin(), proto.values().end());
      for (auto& v : values) {
        if (jitter.Unit() >= config.jitter_probability) continue;
        const bool up = (jitter.Next() & 1U) != 0;
        if (up && v < high) ++v;
        if (!up && v > 0) --v;
      }
      trials.emplace_back(std::move(values), config.vmax);
    }
  }
  return dataset;
}

}  // namespace odorbench
