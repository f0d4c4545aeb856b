#include "odorbench/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "odorbench/errors.hpp"
#include "odorbench/random.hpp"

namespace odorbench {
namespace {

void Tally(ClassifierTally& tally, const ClassificationOutcome& outcome) {
  outcome.is_known() ? ++tally.known : ++tally.rejected;
  tally.decisions.emplace_back(outcome.DecisionLabel());
  tally.reported_similarities.push_back(outcome.reported_similarity.value());
}

struct SimulationResult {
  std::uint64_t correct = 0;
  std::vector<ClassCounts> per_class;
  std::vector<std::uint64_t> histogram;
};

SimulationResult RunSimulation(const BenchmarkConfig& config, const TemplateLibrary& library,
                               std::size_t simulation) {
  SimulationResult result;
  result.histogram.assign(library.size() + 1, 0);
  result.per_class.reserve(library.size());
  for (std::size_t t = 0; t < library.size(); ++t) {
    ClassCounts counts{library[t].label};
    for (std::size_t i = 0; i < config.samples_per_odorant; ++i) {
      StreamRng rng(SeedSpec{config.base_seed, simulation, t * config.samples_per_odorant + i});
      const Signature sample = ApplyNoise(config.noise, library[t].signature, rng);
      const auto outcome = Classify(config.classifier, sample, library, config.cfg);
      if (!outcome.decision) {
        ++counts.rejected;
        ++result.histogram.back();
      } else {
        ++result.histogram[*outcome.decision];
        *outcome.decision == t ? ++counts.correct : ++counts.misclassified_known;
      }
    }
    result.correct += counts.correct;
    result.per_class.push_back(std::move(counts));
  }
  return result;
}

double LabelZ(const std::vector<std::uint64_t>& histogram) {
  const std::size_t k = histogram.size() - 1;
  if (k < 2) return 0.0;
  std::uint64_t accepted = 0;
  for (std::size_t j = 0; j < k; ++j) accepted += histogram[j];
  if (accepted == 0) return 0.0;
  const double expected = static_cast<double>(accepted) / static_cast<double>(k);
  const double sd = std::sqrt(static_cast<double>(accepted) * (1.0 / k) * (1.0 - 1.0 / k));
  double worst = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    worst = std::max(worst, std::abs(static_cast<double>(histogram[j]) - expected) / sd);
  }
  return worst;
}

Signature Blend(const Signature& a, const Signature& b, StreamRng& rng) {
  std::vector<Level> values(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) values[i] = (rng.Next() & 1U) != 0 ? a[i] : b[i];
  return Signature(std::move(values), a.vmax());
}

// Equidistant (in L1) from a and b whenever the number of odd-difference
// positions is even; otherwise off by one.
Signature ManhattanTie(const Signature& a, const Signature& b) {
  std::vector<Level> values(a.size());
  bool nearer_a = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int x = a[i];
    const int y = b[i];
    const int half = std::abs(x - y) / 2;
    if (std::abs(x - y) % 2 == 0) {
      values[i] = static_cast<Level>((x + y) / 2);
      continue;
    }
    values[i] = nearer_a ? static_cast<Level>(x + (y > x ? half : -half))
                         : static_cast<Level>(y + (x > y ? half : -half));
    nearer_a = !nearer_a;
  }
  return Signature(std::move(values), a.vmax());
}

}  // namespace

Fig1aReport RunFig1a(const TemplateLibrary& library, std::size_t count, std::uint64_t seed,
                     double theta) {
  if (count == 0) throw ConfigError("random-vector probe needs count >= 1");
  const ClassifierConfig cfg{theta, Metric::kManhattanSimilarity};
  cfg.Validate();

  Fig1aReport report;
  report.seed = seed;
  report.count = count;
  report.theta = theta;
  report.forced_choice.classifier = ClassifierKind::kForcedChoice;
  report.nn_threshold.classifier = ClassifierKind::kNnThreshold;
  for (std::size_t i = 0; i < count; ++i) {
    const Signature probe = RandomSignature(library.length(), library.vmax(), SeedSpec{seed, 0, i});
    const auto forced = ClassifyForcedChoice(probe, library);
    Tally(report.forced_choice, forced);
    if (forced.is_known() && forced.reported_similarity.value() != 1.0) {
      report.forced_choice_always_unity = false;
    }
    Tally(report.nn_threshold, ClassifyNnThreshold(probe, library, cfg));
  }
  return report;
}

Fig1bReport RunFig1b(const TemplateLibrary& library, double theta) {
  const ClassifierConfig cfg{theta, Metric::kManhattanSimilarity};
  cfg.Validate();
  for (const auto& t : library.templates()) {
    const auto values = t.signature.values();
    if (std::find(values.begin(), values.end(), library.vmax()) != values.end()) {
      throw ConfigError("template '" + t.label + "' contains vmax=" + std::to_string(library.vmax()) +
                        "; the +1 probe needs every template value <= vmax - 1");
    }
  }

  Fig1bReport report;
  report.theta = theta;
  for (std::size_t j = 0; j < library.size(); ++j) {
    const Signature shifted = AdditiveOffset(library[j].signature, report.offset);
    const auto forced = ClassifyForcedChoice(shifted, library);
    const auto nn = ClassifyNnThreshold(shifted, library, cfg);
    report.samples.push_back({library[j].label, std::string(forced.DecisionLabel()),
                              forced.reported_similarity.value(), std::string(nn.DecisionLabel()),
                              nn.reported_similarity.value()});
    if (forced.decision == j) ++report.forced_choice_correct;
    if (nn.decision == j) ++report.nn_correct;
  }
  return report;
}

void BenchmarkConfig::Validate() const {
  if (samples_per_odorant < 1) throw ConfigError("samples_per_odorant must be >= 1");
  if (num_simulations < 1) throw ConfigError("num_simulations must be >= 1");
  noise.Validate();
  cfg.Validate();
}

ExperimentReport RunBenchmark(const BenchmarkConfig& config, const TemplateLibrary& library,
                              unsigned workers) {
  config.Validate();
  if (library.empty()) throw ConfigError("benchmark needs a non-empty library");

  std::vector<SimulationResult> results(config.num_simulations);
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.num_simulations));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t s = next++; s < config.num_simulations; s = next++) {
      results[s] = RunSimulation(config, library, s);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  ExperimentReport report;
  report.config = config;
  report.samples_per_simulation = config.samples_per_odorant * library.size();
  report.per_class.reserve(library.size());
  for (const auto& t : library.templates()) report.per_class.push_back({t.label});
  report.decision_histogram.assign(library.size() + 1, 0);

  const auto denom = static_cast<double>(report.samples_per_simulation);
  double sum = 0.0;
  for (const auto& r : results) {
    const double accuracy = static_cast<double>(r.correct) / denom;
    report.per_simulation_accuracy.push_back(accuracy);
    sum += accuracy;
    for (std::size_t t = 0; t < library.size(); ++t) {
      report.per_class[t].correct += r.per_class[t].correct;
      report.per_class[t].misclassified_known += r.per_class[t].misclassified_known;
      report.per_class[t].rejected += r.per_class[t].rejected;
    }
    for (std::size_t j = 0; j < r.histogram.size(); ++j) report.decision_histogram[j] += r.histogram[j];
  }
  const auto count = static_cast<double>(results.size());
  report.mean_accuracy = sum / count;
  if (results.size() > 1) {
    double squares = 0.0;
    for (double a : report.per_simulation_accuracy) {
      squares += (a - report.mean_accuracy) * (a - report.mean_accuracy);
    }
    report.std_accuracy = std::sqrt(squares / (count - 1.0));
  }
  report.max_label_z = LabelZ(report.decision_histogram);
  return report;
}

std::vector<Signature> GenerateMixedInputs(const TemplateLibrary& library, std::size_t count,
                                           std::uint64_t seed) {
  std::vector<Signature> inputs;
  inputs.reserve(count);
  const std::size_t k = library.size();
  for (std::size_t i = 0; i < count; ++i) {
    StreamRng rng(SeedSpec{seed, 1, i});
    const Signature& a = library[rng.Below(k)].signature;
    const Signature& b = library[rng.Below(k)].signature;
    switch (i % 6) {
      case 0:
        inputs.push_back(RandomSignature(library.length(), library.vmax(), rng));
        break;
      case 1:
        inputs.push_back(ImpulseOcclude(a, rng.Unit(), rng));
        break;
      case 2:
        inputs.push_back(AdditiveOffset(a, static_cast<Level>(rng.Below(4))));
        break;
      case 3:
        inputs.push_back(Blend(a, b, rng));
        break;
      case 4:
        inputs.push_back(ManhattanTie(a, b));
        break;
      default:
        inputs.push_back(ImpulseOcclude(Blend(a, b, rng), 0.5 * rng.Unit(), rng));
        break;
    }
  }
  return inputs;
}

EquivalenceCheck CheckDecisionEquivalence(const TemplateLibrary& library, double theta,
                                          std::size_t count, std::uint64_t seed) {
  const ClassifierConfig cfg{theta, Metric::kManhattanSimilarity};
  EquivalenceCheck check;
  for (const auto& input : GenerateMixedInputs(library, count, seed)) {
    const auto lhs = ClassifyModifiedDennler(input, library, cfg);
    const auto rhs = ClassifyNnThreshold(input, library, cfg);
    ++check.inputs;
    if (lhs.decision != rhs.decision || lhs.reported_similarity != rhs.reported_similarity) {
      ++check.disagreements;
    }
  }
  return check;
}

Fig1cReport RunFig1c(const TemplateLibrary& library, const BenchmarkConfig& base,
                     std::size_t adversarial_inputs, unsigned workers) {
  BenchmarkConfig config = base;
  config.cfg.metric = Metric::kManhattanSimilarity;

  Fig1cReport report;
  config.classifier = ClassifierKind::kModifiedDennler;
  report.modified_dennler = RunBenchmark(config, library, workers);
  config.classifier = ClassifierKind::kNnThreshold;
  report.nn_threshold = RunBenchmark(config, library, workers);
  report.per_simulation_identical =
      report.modified_dennler.per_simulation_accuracy == report.nn_threshold.per_simulation_accuracy;
  report.adversarial =
      CheckDecisionEquivalence(library, config.cfg.theta, adversarial_inputs, config.base_seed);
  return report;
}

Fig2Report RunFig2Critique(const TemplateLibrary& library, const SampleMap& samples) {
  if (samples.empty()) throw ConfigError("median critique needs at least one labeled sample");
  std::map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < library.size(); ++j) index[library[j].label] = j;

  Fig2Report report;
  std::size_t total = 0;
  std::size_t total_correct = 0;
  for (const auto& [label, signatures] : samples) {
    const auto it = index.find(label);
    if (it == index.end()) throw ConfigError("sample label '" + label + "' is not in the library");
    if (signatures.empty()) throw ConfigError("label '" + label + "' has no samples");

    std::vector<ClassificationOutcome> outcomes;
    outcomes.reserve(signatures.size());
    Fig2ClassRow row;
    row.label = label;
    for (const auto& s : signatures) {
      outcomes.push_back(ClassifyForcedChoice(s, library));
      if (outcomes.back().decision == it->second) ++row.correct;
    }
    row.samples = signatures.size();
    row.accuracy = static_cast<double>(row.correct) / static_cast<double>(row.samples);
    row.medians = MedianSimilarityReport(outcomes, library);
    row.own_median = row.medians[it->second].median;
    total += row.samples;
    total_correct += row.correct;
    report.rows.push_back(std::move(row));
  }
  report.overall_accuracy = static_cast<double>(total_correct) / static_cast<double>(total);
  return report;
}

}  // namespace odorbench
