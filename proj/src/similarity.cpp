#include "odorbench/similarity.hpp"

#include <string>

#include "odorbench/errors.hpp"

namespace odorbench {
namespace {

void RequireSameLength(const Signature& a, const Signature& b) {
  if (a.size() != b.size()) {
    throw InputShapeError("signature lengths differ: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
}

}  // namespace

SimilarityScore::SimilarityScore(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DataError("similarity " + std::to_string(value) + " outside [0, 1]");
  }
}

std::string_view ToString(Metric metric) noexcept {
  switch (metric) {
    case Metric::kJaccardPairset:
      return "jaccard_pairset";
    case Metric::kManhattanSimilarity:
      return "manhattan_similarity";
  }
  return "unknown";
}

Metric ParseMetric(std::string_view text) {
  if (text == "jaccard_pairset" || text == "jaccard") return Metric::kJaccardPairset;
  if (text == "manhattan_similarity" || text == "manhattan") return Metric::kManhattanSimilarity;
  throw ConfigError("unknown metric '" + std::string(text) +
                    "' (expected jaccard_pairset or manhattan_similarity)");
}

std::size_t MatchCount(const Signature& a, const Signature& b) {
  RequireSameLength(a, b);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) matches += a[i] == b[i] ? 1 : 0;
  return matches;
}

SimilarityScore JaccardPairset(const Signature& a, const Signature& b) {
  const std::size_t m = MatchCount(a, b);
  const std::size_t n = a.size();
  if (n == 0) return SimilarityScore(1.0);
  return SimilarityScore(static_cast<double>(m) / static_cast<double>(2 * n - m));
}

std::uint64_t Manhattan(const Signature& a, const Signature& b) {
  RequireSameLength(a, b);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  }
  return total;
}

SimilarityScore ManhattanSimilarity(const Signature& a, const Signature& b) {
  RequireSameLength(a, b);
  if (a.vmax() != b.vmax()) {
    throw InputShapeError("signature level bounds differ: " + std::to_string(a.vmax()) + " vs " +
                          std::to_string(b.vmax()));
  }
  const std::uint64_t span = static_cast<std::uint64_t>(a.size()) * a.vmax();
  if (span == 0) return SimilarityScore(1.0);
  return SimilarityScore(1.0 - static_cast<double>(Manhattan(a, b)) / static_cast<double>(span));
}

SimilarityScore Score(Metric metric, const Signature& a, const Signature& b) {
  switch (metric) {
    case Metric::kJaccardPairset:
      return JaccardPairset(a, b);
    case Metric::kManhattanSimilarity:
      return ManhattanSimilarity(a, b);
  }
  throw ConfigError("unknown metric");
}

}  // namespace odorbench
