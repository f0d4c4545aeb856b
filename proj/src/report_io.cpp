#include "odorbench/report_io.hpp"

#include <charconv>
#include <sstream>

namespace odorbench {

std::string FormatNumber(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

Json BenchmarkConfigToJson(const BenchmarkConfig& config) {
  Json doc;
  doc["classifier"] = ToString(config.classifier);
  doc["theta"] = config.cfg.theta;
  doc["metric"] = ToString(config.cfg.metric);
  doc["tie_break"] = "lowest_index";
  doc["noise"] = ToString(config.noise);
  doc["samples_per_odorant"] = config.samples_per_odorant;
  doc["num_simulations"] = config.num_simulations;
  doc["base_seed"] = config.base_seed;
  return doc;
}

Json ReportToJson(const ExperimentReport& report) {
  Json doc;
  doc["config"] = BenchmarkConfigToJson(report.config);
  doc["samples_per_simulation"] = report.samples_per_simulation;
  doc["mean_accuracy"] = report.mean_accuracy;
  doc["std_accuracy"] = report.std_accuracy;
  doc["reference_accuracy"] = kReferenceThresholdedAccuracy;
  doc["per_simulation_accuracy"] = report.per_simulation_accuracy;
  Json classes = Json::array();
  for (const auto& c : report.per_class) {
    Json entry;
    entry["label"] = c.label;
    entry["correct"] = c.correct;
    entry["misclassified_known"] = c.misclassified_known;
    entry["rejected"] = c.rejected;
    classes.push_back(std::move(entry));
  }
  doc["per_class"] = std::move(classes);
  Json histogram;
  for (std::size_t j = 0; j < report.per_class.size(); ++j) {
    histogram[report.per_class[j].label] = report.decision_histogram[j];
  }
  histogram[std::string(kNoneOfTheAbove)] = report.decision_histogram.back();
  doc["decision_histogram"] = std::move(histogram);
  doc["max_label_z"] = report.max_label_z;
  return doc;
}

namespace {

Json TallyToJson(const ClassifierTally& tally) {
  Json doc;
  doc["classifier"] = ToString(tally.classifier);
  doc["known"] = tally.known;
  doc["none_of_the_above"] = tally.rejected;
  doc["decisions"] = tally.decisions;
  doc["reported_similarities"] = tally.reported_similarities;
  return doc;
}

}  // namespace

Json Fig1aToJson(const Fig1aReport& report) {
  Json doc;
  doc["panel"] = "fig1a";
  doc["seed"] = report.seed;
  doc["count"] = report.count;
  doc["theta"] = report.theta;
  doc["forced_choice"] = TallyToJson(report.forced_choice);
  doc["nn_threshold"] = TallyToJson(report.nn_threshold);
  doc["forced_choice_always_unity"] = report.forced_choice_always_unity;
  Json reference;
  reference["epl_known"] = kReferenceEplRandomKnown;
  reference["epl_none_of_the_above"] = kReferenceEplRandomRejected;
  reference["note"] = "published value, not computed here";
  doc["reference"] = std::move(reference);
  return doc;
}

Json Fig1bToJson(const Fig1bReport& report) {
  Json doc;
  doc["panel"] = "fig1b";
  doc["theta"] = report.theta;
  doc["offset"] = report.offset;
  doc["forced_choice_correct"] = report.forced_choice_correct;
  doc["nn_threshold_correct"] = report.nn_correct;
  doc["total"] = report.samples.size();
  Json samples = Json::array();
  for (const auto& s : report.samples) {
    Json entry;
    entry["true_label"] = s.true_label;
    entry["forced_choice_decision"] = s.forced_choice_decision;
    entry["forced_choice_reported"] = s.forced_choice_reported;
    entry["nn_threshold_decision"] = s.nn_decision;
    entry["nn_threshold_reported"] = s.nn_reported;
    samples.push_back(std::move(entry));
  }
  doc["samples"] = std::move(samples);
  return doc;
}

Json Fig1cToJson(const Fig1cReport& report) {
  Json doc;
  doc["panel"] = "fig1c";
  doc["modified_dennler"] = ReportToJson(report.modified_dennler);
  doc["nn_threshold"] = ReportToJson(report.nn_threshold);
  doc["per_simulation_identical"] = report.per_simulation_identical;
  doc["adversarial_inputs"] = report.adversarial.inputs;
  doc["adversarial_disagreements"] = report.adversarial.disagreements;
  doc["equivalent"] = report.equivalent();
  doc["reference_accuracy"] = kReferenceThresholdedAccuracy;
  return doc;
}

Json Fig2ToJson(const Fig2Report& report) {
  Json doc;
  doc["overall_accuracy"] = report.overall_accuracy;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json entry;
    entry["label"] = r.label;
    entry["samples"] = r.samples;
    entry["correct"] = r.correct;
    entry["accuracy"] = r.accuracy;
    entry["own_median"] = r.own_median;
    Json medians;
    for (const auto& m : r.medians) medians[m.label] = m.median;
    entry["medians"] = std::move(medians);
    rows.push_back(std::move(entry));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

std::string PerSimulationCsv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "simulation,accuracy\n";
  for (std::size_t s = 0; s < report.per_simulation_accuracy.size(); ++s) {
    out << s << ',' << FormatNumber(report.per_simulation_accuracy[s]) << '\n';
  }
  return out.str();
}

std::string PerClassCsv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "label,correct,misclassified_known,rejected\n";
  for (const auto& c : report.per_class) {
    out << c.label << ',' << c.correct << ',' << c.misclassified_known << ',' << c.rejected << '\n';
  }
  return out.str();
}

std::string Fig1aPlotCsv(const Fig1aReport& report) {
  std::ostringstream out;
  out << "panel,classifier,outcome,count\n";
  for (const auto* tally : {&report.forced_choice, &report.nn_threshold}) {
    out << "fig1a," << ToString(tally->classifier) << ",known," << tally->known << '\n';
    out << "fig1a," << ToString(tally->classifier) << ",none_of_the_above," << tally->rejected << '\n';
  }
  return out.str();
}

std::string Fig1bPlotCsv(const Fig1bReport& report) {
  const std::size_t total = report.samples.size();
  std::ostringstream out;
  out << "panel,classifier,outcome,count\n";
  out << "fig1b,forced_choice,correct," << report.forced_choice_correct << '\n';
  out << "fig1b,forced_choice,incorrect," << total - report.forced_choice_correct << '\n';
  out << "fig1b,nn_threshold,correct," << report.nn_correct << '\n';
  out << "fig1b,nn_threshold,incorrect," << total - report.nn_correct << '\n';
  return out.str();
}

std::string Fig1cPlotCsv(const Fig1cReport& report) {
  std::ostringstream out;
  out << "panel,classifier,mean_accuracy,std_accuracy,reference_accuracy\n";
  for (const auto* r : {&report.modified_dennler, &report.nn_threshold}) {
    out << "fig1c," << ToString(r->config.classifier) << ',' << FormatNumber(r->mean_accuracy) << ','
        << FormatNumber(r->std_accuracy) << ',' << FormatNumber(kReferenceThresholdedAccuracy) << '\n';
  }
  return out.str();
}

}  // namespace odorbench
