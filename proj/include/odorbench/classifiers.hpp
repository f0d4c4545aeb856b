#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odorbench/signature.hpp"
#include "odorbench/similarity.hpp"

namespace odorbench {

inline constexpr std::string_view kNoneOfTheAbove = "NONE_OF_THE_ABOVE";
inline constexpr double kDefaultTheta = 0.75;

enum class TieBreak { kLowestIndex };

struct ClassifierConfig {
  double theta = kDefaultTheta;
  Metric metric = Metric::kManhattanSimilarity;
  TieBreak tie_break = TieBreak::kLowestIndex;

  // Throws ConfigError unless 0 <= theta <= 1.
  void Validate() const;
};

enum class ClassifierKind { kForcedChoice, kNnThreshold, kModifiedDennler };

[[nodiscard]] std::string_view ToString(ClassifierKind kind) noexcept;
// Accepts forced_choice, nn_threshold (or nn), modified_dennler.
[[nodiscard]] ClassifierKind ParseClassifierKind(std::string_view text);

struct TemplateScore {
  std::string label;
  SimilarityScore score;
};

struct ClassificationOutcome {
  // Accepted template index; empty means none of the above.
  std::optional<std::size_t> decision;
  // Template that won the argmax, whether or not it was accepted.
  std::optional<std::size_t> selected_index;
  SimilarityScore reported_similarity;
  // One entry per library template, in library order.
  std::vector<TemplateScore> per_template_scores;

  [[nodiscard]] bool is_known() const noexcept { return decision.has_value(); }
  [[nodiscard]] std::string_view DecisionLabel() const noexcept;
};

// Reconstruction of the exact-match / Jaccard forced-choice procedure:
// pick the template with the most exactly matching positions (lowest index
// on ties), then score that *selected template* against every template with
// JaccardPairset. The reported similarity is therefore the selected
// template's self-similarity, 1.0, and the test vector's own similarity to
// any template is never reported. Only when no template shares a single
// position with the test vector is the input rejected.
[[nodiscard]] ClassificationOutcome ClassifyForcedChoice(const Signature& test,
                                                         const TemplateLibrary& library);

// Nearest neighbour by cfg.metric with open-set rejection: accepted only if
// the best similarity is strictly greater than cfg.theta.
[[nodiscard]] ClassificationOutcome ClassifyNnThreshold(const Signature& test,
                                                        const TemplateLibrary& library,
                                                        const ClassifierConfig& cfg);

// The forced-choice pipeline retrofitted with Manhattan distance and a
// threshold: argmin of integer L1 distance, then the threshold on the
// normalized similarity of that template. cfg.metric is ignored. Decisions
// coincide with ClassifyNnThreshold under the Manhattan metric.
[[nodiscard]] ClassificationOutcome ClassifyModifiedDennler(const Signature& test,
                                                            const TemplateLibrary& library,
                                                            const ClassifierConfig& cfg);

[[nodiscard]] ClassificationOutcome Classify(ClassifierKind kind, const Signature& test,
                                             const TemplateLibrary& library,
                                             const ClassifierConfig& cfg);

struct TemplateMedian {
  std::string label;
  double median = 0.0;
};

// For each template k, the median over outcomes of per_template_scores[k]
// (mean of the two middle values for an even count). This is the per-bar
// aggregation behind "median similarity" plots of forced-choice results.
// Throws ConfigError on an empty list, InputShapeError if an outcome does
// not carry one score per template.
[[nodiscard]] std::vector<TemplateMedian> MedianSimilarityReport(
    std::span<const ClassificationOutcome> outcomes, const TemplateLibrary& library);

}  // namespace odorbench
