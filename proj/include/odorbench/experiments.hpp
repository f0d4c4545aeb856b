#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "odorbench/classifiers.hpp"
#include "odorbench/noise.hpp"
#include "odorbench/signature.hpp"

namespace odorbench {

// Published reference values, displayed next to locally measured results.
// They are never computed here.
inline constexpr double kReferenceThresholdedAccuracy = 0.082;
inline constexpr std::size_t kReferenceEplRandomKnown = 1;
inline constexpr std::size_t kReferenceEplRandomRejected = 99;

struct ClassifierTally {
  ClassifierKind classifier = ClassifierKind::kForcedChoice;
  std::size_t known = 0;
  std::size_t rejected = 0;
  std::vector<std::string> decisions;
  std::vector<double> reported_similarities;
};

// Random-vector probe.
struct Fig1aReport {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  double theta = kDefaultTheta;
  ClassifierTally forced_choice;
  ClassifierTally nn_threshold;
  // Every forced-choice acceptance was reported at similarity exactly 1.0.
  bool forced_choice_always_unity = true;
};

// Generates `count` uniform random signatures (stream SeedSpec{seed, 0, i})
// and classifies each with the forced-choice procedure and with the
// Manhattan nearest neighbour at theta. Throws ConfigError if count == 0.
[[nodiscard]] Fig1aReport RunFig1a(const TemplateLibrary& library, std::size_t count,
                                   std::uint64_t seed, double theta = kDefaultTheta);

struct Fig1bSample {
  std::string true_label;
  std::string forced_choice_decision;
  double forced_choice_reported = 0.0;
  std::string nn_decision;
  double nn_reported = 0.0;
};

// +1 offset probe.
struct Fig1bReport {
  double theta = kDefaultTheta;
  Level offset = 1;
  std::vector<Fig1bSample> samples;
  std::size_t forced_choice_correct = 0;
  std::size_t nn_correct = 0;
};

// Offsets every template by +1 and classifies each perturbed copy. Throws
// ConfigError if any template value equals vmax, since the offset would
// saturate there.
[[nodiscard]] Fig1bReport RunFig1b(const TemplateLibrary& library, double theta = kDefaultTheta);

struct BenchmarkConfig {
  std::size_t samples_per_odorant = 100;
  std::size_t num_simulations = 100;
  NoiseSpec noise = NoiseSpec::ImpulseRange(0.2, 0.8);
  ClassifierKind classifier = ClassifierKind::kNnThreshold;
  ClassifierConfig cfg;
  std::uint64_t base_seed = 0;

  void Validate() const;
};

struct ClassCounts {
  std::string label;
  std::uint64_t correct = 0;
  std::uint64_t misclassified_known = 0;
  std::uint64_t rejected = 0;
};

struct ExperimentReport {
  BenchmarkConfig config;
  std::size_t samples_per_simulation = 0;
  std::vector<double> per_simulation_accuracy;
  double mean_accuracy = 0.0;
  // Sample standard deviation (n - 1); 0 for a single simulation.
  double std_accuracy = 0.0;
  std::vector<ClassCounts> per_class;
  // How often each template label was emitted, pooled over all samples;
  // the last entry counts rejections.
  std::vector<std::uint64_t> decision_histogram;
  // Largest |z| of a label count against a uniform split of the accepted
  // decisions. Diagnostic only.
  double max_label_z = 0.0;
};

// Monte Carlo benchmark. Sample i of template t in simulation s is
// corrupted using stream SeedSpec{base_seed, s, t * samples_per_odorant + i},
// so the corrupted inputs are identical for every classifier and every
// worker count. A rejection counts as a failure. workers == 0 picks the
// hardware concurrency.
[[nodiscard]] ExperimentReport RunBenchmark(const BenchmarkConfig& config,
                                            const TemplateLibrary& library,
                                            unsigned workers = 0);

struct EquivalenceCheck {
  std::size_t inputs = 0;
  std::size_t disagreements = 0;
};

// Mixed probe inputs: uniform random vectors, occluded and offset
// templates, position-wise blends of two templates and exact Manhattan
// ties between two templates. Deterministic in seed.
[[nodiscard]] std::vector<Signature> GenerateMixedInputs(const TemplateLibrary& library,
                                                         std::size_t count, std::uint64_t seed);

// Compares decision and reported similarity of the modified forced-choice
// pipeline against the Manhattan nearest neighbour on mixed inputs.
[[nodiscard]] EquivalenceCheck CheckDecisionEquivalence(const TemplateLibrary& library,
                                                        double theta, std::size_t count,
                                                        std::uint64_t seed);

struct Fig1cReport {
  ExperimentReport modified_dennler;
  ExperimentReport nn_threshold;
  bool per_simulation_identical = false;
  EquivalenceCheck adversarial;

  [[nodiscard]] bool equivalent() const noexcept {
    return per_simulation_identical && adversarial.disagreements == 0;
  }
};

// Runs the benchmark described by `base` (its classifier field is ignored)
// once per classifier with identical seeds, then the adversarial check.
[[nodiscard]] Fig1cReport RunFig1c(const TemplateLibrary& library, const BenchmarkConfig& base,
                                   std::size_t adversarial_inputs, unsigned workers = 0);

struct Fig2ClassRow {
  std::string label;
  std::vector<TemplateMedian> medians;
  std::size_t samples = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  // Median similarity reported for the row's own template.
  double own_median = 0.0;
};

struct Fig2Report {
  std::vector<Fig2ClassRow> rows;
  double overall_accuracy = 0.0;
};

// Classifies every sample with the forced-choice procedure and sets the
// per-class median similarity next to the actual accuracy. Throws
// ConfigError for labels absent from the library or with no samples.
[[nodiscard]] Fig2Report RunFig2Critique(const TemplateLibrary& library, const SampleMap& samples);

}  // namespace odorbench
