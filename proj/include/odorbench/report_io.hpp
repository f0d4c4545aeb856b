#pragma once

#include <string>

#include "odorbench/experiments.hpp"
#include "odorbench/library_io.hpp"

namespace odorbench {

// Shortest round-trip decimal form (std::to_chars); locale independent.
[[nodiscard]] std::string FormatNumber(double value);

[[nodiscard]] Json BenchmarkConfigToJson(const BenchmarkConfig& config);
[[nodiscard]] Json ReportToJson(const ExperimentReport& report);
[[nodiscard]] Json Fig1aToJson(const Fig1aReport& report);
[[nodiscard]] Json Fig1bToJson(const Fig1bReport& report);
[[nodiscard]] Json Fig1cToJson(const Fig1cReport& report);
[[nodiscard]] Json Fig2ToJson(const Fig2Report& report);

// simulation,accuracy
[[nodiscard]] std::string PerSimulationCsv(const ExperimentReport& report);
// label,correct,misclassified_known,rejected
[[nodiscard]] std::string PerClassCsv(const ExperimentReport& report);

// Bar-chart data, one row per (classifier, outcome).
// panel,classifier,outcome,count
[[nodiscard]] std::string Fig1aPlotCsv(const Fig1aReport& report);
// panel,classifier,outcome,count
[[nodiscard]] std::string Fig1bPlotCsv(const Fig1bReport& report);
// panel,classifier,mean_accuracy,std_accuracy,reference_accuracy
[[nodiscard]] std::string Fig1cPlotCsv(const Fig1cReport& report);

}  // namespace odorbench
