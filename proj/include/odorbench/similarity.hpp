#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "odorbench/signature.hpp"

namespace odorbench {

// A similarity value in [0, 1].
class SimilarityScore {
 public:
  constexpr SimilarityScore() = default;
  // Throws DataError outside [0, 1].
  explicit SimilarityScore(double value);

  [[nodiscard]] constexpr double value() const noexcept { return value_; }

  friend constexpr auto operator<=>(const SimilarityScore&, const SimilarityScore&) = default;

 private:
  double value_ = 0.0;
};

enum class Metric { kJaccardPairset, kManhattanSimilarity };

[[nodiscard]] std::string_view ToString(Metric metric) noexcept;
// Accepts "jaccard_pairset"/"jaccard" and "manhattan_similarity"/"manhattan".
[[nodiscard]] Metric ParseMetric(std::string_view text);

// All kernels throw InputShapeError when the lengths differ.

// Number of positions holding identical values.
[[nodiscard]] std::size_t MatchCount(const Signature& a, const Signature& b);

// Jaccard overlap of the (index, value) pair sets of a and b. Each set has
// n members and they share m = MatchCount(a, b), so J = m / (2n - m).
[[nodiscard]] SimilarityScore JaccardPairset(const Signature& a, const Signature& b);

// Sum of absolute element-wise differences.
[[nodiscard]] std::uint64_t Manhattan(const Signature& a, const Signature& b);

// 1 - Manhattan(a, b) / (n * vmax). Additionally requires a shared vmax.
// With vmax == 0 every pair is identical and the similarity is 1.
[[nodiscard]] SimilarityScore ManhattanSimilarity(const Signature& a, const Signature& b);

[[nodiscard]] SimilarityScore Score(Metric metric, const Signature& a, const Signature& b);

}  // namespace odorbench
