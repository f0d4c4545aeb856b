#include "odorbench/classifiers.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "odorbench/errors.hpp"

namespace odorbench {

void ClassifierConfig::Validate() const {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw ConfigError("theta must lie in [0, 1], got " + std::to_string(theta));
  }
}

std::string_view ToString(ClassifierKind kind) noexcept {
  switch (kind) {
    case ClassifierKind::kForcedChoice:
      return "forced_choice";
    case ClassifierKind::kNnThreshold:
      return "nn_threshold";
    case ClassifierKind::kModifiedDennler:
      return "modified_dennler";
  }
  return "unknown";
}

ClassifierKind ParseClassifierKind(std::string_view text) {
  if (text == "forced_choice") return ClassifierKind::kForcedChoice;
  if (text == "nn_threshold" || text == "nn") return ClassifierKind::kNnThreshold;
  if (text == "modified_dennler") return ClassifierKind::kModifiedDennler;
  throw ConfigError("unknown classifier '" + std::string(text) +
                    "' (expected forced_choice, nn_threshold or modified_dennler)");
}

std::string_view ClassificationOutcome::DecisionLabel() const noexcept {
  if (!decision) return kNoneOfTheAbove;
  return per_template_scores[*decision].label;
}

ClassificationOutcome ClassifyForcedChoice(const Signature& test, const TemplateLibrary& library) {
  library.RequireCompatible(test);

  std::size_t best = 0;
  std::size_t best_matches = 0;
  for (std::size_t j = 0; j < library.size(); ++j) {
    const std::size_t m = MatchCount(test, library[j].signature);
    if (m > best_matches) {
      best_matches = m;
      best = j;
    }
  }

  ClassificationOutcome out;
  out.per_template_scores.reserve(library.size());
  if (best_matches == 0) {
    // Nothing in common with any template: every pair-set overlap is empty.
    for (const auto& t : library.templates()) {
      out.per_template_scores.push_back({t.label, JaccardPairset(test, t.signature)});
    }
    return out;
  }

  const Signature& selected = library[best].signature;
  for (const auto& t : library.templates()) {
    out.per_template_scores.push_back({t.label, JaccardPairset(selected, t.signature)});
  }
  out.decision = best;
  out.selected_index = best;
  out.reported_similarity = out.per_template_scores[best].score;
  return out;
}

ClassificationOutcome ClassifyNnThreshold(const Signature& test, const TemplateLibrary& library,
                                          const ClassifierConfig& cfg) {
  cfg.Validate();
  library.RequireCompatible(test);

  ClassificationOutcome out;
  out.per_template_scores.reserve(library.size());
  std::size_t best = 0;
  for (std::size_t j = 0; j < library.size(); ++j) {
    const SimilarityScore s = Score(cfg.metric, test, library[j].signature);
    out.per_template_scores.push_back({library[j].label, s});
    if (s > out.per_template_scores[best].score) best = j;
  }
  out.selected_index = best;
  out.reported_similarity = out.per_template_scores[best].score;
  if (out.reported_similarity.value() > cfg.theta) out.decision = best;
  return out;
}

ClassificationOutcome ClassifyModifiedDennler(const Signature& test, const TemplateLibrary& library,
                                              const ClassifierConfig& cfg) {
  cfg.Validate();
  library.RequireCompatible(test);

  std::size_t best = 0;
  std::uint64_t best_distance = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t j = 0; j < library.size(); ++j) {
    const std::uint64_t d = Manhattan(test, library[j].signature);
    if (d < best_distance) {
      best_distance = d;
      best = j;
    }
  }

  ClassificationOutcome out;
  out.per_template_scores.reserve(library.size());
  for (const auto& t : library.templates()) {
    out.per_template_scores.push_back({t.label, ManhattanSimilarity(test, t.signature)});
  }
  out.selected_index = best;
  out.reported_similarity = out.per_template_scores[best].score;
  if (out.reported_similarity.value() > cfg.theta) out.decision = best;
  return out;
}

ClassificationOutcome Classify(ClassifierKind kind, const Signature& test,
                               const TemplateLibrary& library, const ClassifierConfig& cfg) {
  switch (kind) {
    case ClassifierKind::kForcedChoice:
      return ClassifyForcedChoice(test, library);
    case ClassifierKind::kNnThreshold:
      return ClassifyNnThreshold(test, library, cfg);
    case ClassifierKind::kModifiedDennler:
      return ClassifyModifiedDennler(test, library, cfg);
  }
  throw ConfigError("unknown classifier kind");
}

std::vector<TemplateMedian> MedianSimilarityReport(std::span<const ClassificationOutcome> outcomes,
                                                   const TemplateLibrary& library) {
  if (outcomes.empty()) throw ConfigError("median report needs at least one outcome");
  std::vector<TemplateMedian> medians;
  medians.reserve(library.size());
  std::vector<double> column(outcomes.size());
  for (std::size_t k = 0; k < library.size(); ++k) {
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (outcomes[i].per_template_scores.size() != library.size()) {
        throw InputShapeError("outcome " + std::to_string(i) + " has " +
                              std::to_string(outcomes[i].per_template_scores.size()) +
                              " scores for a library of " + std::to_string(library.size()));
      }
      column[i] = outcomes[i].per_template_scores[k].score.value();
    }
    std::sort(column.begin(), column.end());
    const std::size_t mid = column.size() / 2;
    const double median =
        column.size() % 2 == 1 ? column[mid] : 0.5 * (column[mid - 1] + column[mid]);
    medians.push_back({library[k].label, median});
  }
  return medians;
}

}  // namespace odorbench
