#include "odorbench/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "odorbench/classifiers.hpp"
#include "odorbench/errors.hpp"
#include "odorbench/experiments.hpp"
#include "odorbench/ingest.hpp"
#include "odorbench/library_io.hpp"
#include "odorbench/report_io.hpp"

namespace odorbench {
namespace fs = std::filesystem;
namespace {

// Bad flag values detected after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct IngestOptions {
  bool synthetic = false;
  std::string data;
  std::string map = "default";
  std::string feature = "max";
  int levels = 16;
  std::optional<double> feature_min;
  std::optional<double> feature_max;
  std::vector<std::string> odorant_filter;
  std::vector<std::string> location_filter;
  std::string date_prefix;
  std::string glob = "*";
  std::size_t odorants = 10;
  std::size_t trials = 20;
  std::size_t length = kDefaultLength;
  unsigned vmax = kDefaultVmax;
  std::uint64_t seed = 0;
  std::string out;
  std::string manifest;
};

struct BenchOptions {
  std::string lib;
  std::string classifier = "nn_threshold";
  double theta = kDefaultTheta;
  std::string metric = "manhattan_similarity";
  std::string noise = "impulse:0.2-0.8";
  std::size_t sims = 100;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string out_dir = ".";
  std::string prefix = "bench";
};

struct ReproOptions {
  std::string panel;
  std::string lib;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  double theta = kDefaultTheta;
  std::string noise = "impulse:0.2-0.8";
  std::size_t sims = 100;
  std::size_t samples = 100;
  std::size_t adversarial = 10000;
  unsigned workers = 0;
  std::string out_dir = ".";
};

struct ProbeOptions {
  std::string lib;
  std::string signature;
  std::string signature_file;
  double theta = kDefaultTheta;
  std::string json_out;
};

struct LoadedLibrary {
  TemplateLibrary library;
  std::string source;
  std::string digest;
};

LoadedLibrary LoadFromFile(const std::string& path) {
  if (!fs::exists(path)) throw IoError("library file not found: " + path);
  TemplateLibrary library = LoadLibrary(path);
  return {library, path, HexDigest(Fnv1a64(SerializeLibrary(library)))};
}

LoadedLibrary DefaultSyntheticLibrary(std::uint64_t seed) {
  SynthesisConfig synth;
  synth.seed = seed;
  TemplateLibrary library = BuildLibrary(SynthesizeDataset(synth).samples, seed);
  return {library, "synthetic:seed=" + std::to_string(seed), HexDigest(Fnv1a64(SerializeLibrary(library)))};
}

Json Envelope(const std::string& command, const LoadedLibrary& lib, Json report) {
  Json doc;
  doc["tool"] = "odorbench";
  doc["command"] = command;
  Json library;
  library["source"] = lib.source;
  library["digest"] = lib.digest;
  library["templates"] = lib.library.size();
  library["n"] = lib.library.length();
  library["vmax"] = lib.library.vmax();
  doc["library"] = std::move(library);
  doc["report"] = std::move(report);
  return doc;
}

void WriteJson(const fs::path& path, const Json& doc) { WriteTextFile(path, doc.dump(2) + "\n"); }

std::string Percent(double fraction) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << 100.0 * fraction << '%';
  return s.str();
}

void Elapsed(std::ostream& err, std::chrono::steady_clock::time_point start) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  err << "elapsed " << ms.count() << " ms\n";
}

// ---- ingest ---------------------------------------------------------------

IngestConfig ResolveIngestConfig(const IngestOptions& o) {
  IngestConfig config = IngestConfig::Default();
  if (o.map != "default") {
    Json doc;
    try {
      doc = Json::parse(ReadTextFile(o.map));
      config.column_map = doc.get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("column map " + o.map + " must be a JSON array of column indices: " + e.what());
    }
  }
  if (o.feature == "max") {
    config.extractor = FeatureExtractor::kMaxResponse;
  } else if (o.feature.rfind("window:", 0) == 0) {
    config.extractor = FeatureExtractor::kMeanSteadyWindow;
    const std::string range = o.feature.substr(7);
    const auto dash = range.find('-');
    try {
      if (dash == std::string::npos) throw std::invalid_argument("missing '-'");
      config.window_start = std::stoul(range.substr(0, dash));
      config.window_end = std::stoul(range.substr(dash + 1));
    } catch (const std::exception&) {
      throw UsageError("--feature window must be window:START-END, got '" + o.feature + "'");
    }
  } else {
    throw UsageError("--feature must be 'max' or 'window:START-END', got '" + o.feature + "'");
  }
  config.quantizer.levels = o.levels;
  if (o.feature_min.has_value() != o.feature_max.has_value()) {
    throw UsageError("--feature-min and --feature-max must be given together");
  }
  if (o.feature_min) {
    config.fit_quantizer_range = false;
    config.quantizer.feature_min = *o.feature_min;
    config.quantizer.feature_max = *o.feature_max;
  }
  config.odorants = o.odorant_filter;
  config.locations = o.location_filter;
  config.date_prefix = o.date_prefix;
  config.file_glob = o.glob;
  try {
    config.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return config;
}

std::string ManifestPath(const IngestOptions& o) {
  if (!o.manifest.empty()) return o.manifest;
  fs::path p(o.out);
  p.replace_extension(".manifest.json");
  return p.string();
}

Json IssuesToJson(const std::vector<FileIssue>& issues) {
  Json arr = Json::array();
  for (const auto& issue : issues) {
    Json entry;
    entry["file"] = issue.file;
    entry["message"] = issue.message;
    arr.push_back(std::move(entry));
  }
  return arr;
}

int CmdIngest(IngestOptions o, std::ostream& out, std::ostream& err) {
  Json manifest;
  TemplateLibrary library;
  if (o.synthetic) {
    SynthesisConfig synth;
    synth.num_odorants = o.odorants;
    synth.trials_per_odorant = o.trials;
    synth.n = o.length;
    if (o.vmax > UINT16_MAX) throw UsageError("--vmax too large");
    synth.vmax = static_cast<Level>(o.vmax);
    synth.seed = o.seed;
    try {
      synth.Validate();
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    library = BuildLibrary(SynthesizeDataset(synth).samples, o.seed);
    Json config;
    config["num_odorants"] = synth.num_odorants;
    config["trials_per_odorant"] = synth.trials_per_odorant;
    config["n"] = synth.n;
    config["vmax"] = synth.vmax;
    config["separation_bound"] = synth.separation_bound;
    config["jitter_probability"] = synth.jitter_probability;
    manifest["source"] = "synthetic";
    manifest["seed"] = o.seed;
    manifest["source_files"] = Json::array();
    manifest["trials"] = synth.num_odorants * synth.trials_per_odorant;
    manifest["warnings"] = 0;
    manifest["config"] = config;
    manifest["config_hash"] = HexDigest(Fnv1a64(config.dump()));
    out << "synthesized " << synth.num_odorants << " odorants x " << synth.trials_per_odorant << " trials\n";
  } else {
    if (o.data.empty()) {
      if (const char* env = std::getenv(std::string(kDataEnvVar).c_str()); env != nullptr) o.data = env;
    }
    if (o.data.empty()) {
      throw UsageError("ingest needs --synthetic, --data DIR or " + std::string(kDataEnvVar));
    }
    const IngestConfig config = ResolveIngestConfig(o);
    const ParseResult parsed = ParseTrials(o.data, config);
    for (const auto& issue : parsed.file_errors) err << "skipped " << issue.file << ": " << issue.message << '\n';
    if (parsed.trials.empty()) throw DataError("no trials parsed under " + o.data);
    library = BuildLibrary(FeaturizeAll(parsed.trials, config), o.seed);
    const Json config_json = config.ToJson();
    manifest["source"] = "dataset";
    manifest["root"] = o.data;
    manifest["seed"] = o.seed;
    manifest["source_files"] = parsed.source_files;
    manifest["trials"] = parsed.trials.size();
    manifest["warnings"] = parsed.warnings;
    manifest["warning_details"] = IssuesToJson(parsed.warning_details);
    manifest["file_errors"] = IssuesToJson(parsed.file_errors);
    manifest["config"] = config_json;
    manifest["config_hash"] = HexDigest(Fnv1a64(config_json.dump()));
    out << "parsed " << parsed.trials.size() << " trials, " << parsed.warnings << " warnings, "
        << parsed.file_errors.size() << " files skipped\n";
  }
  const std::string text = SerializeLibrary(library);
  manifest["library"] = o.out;
  manifest["library_digest"] = HexDigest(Fnv1a64(text));
  WriteTextFile(o.out, text);
  WriteJson(ManifestPath(o), manifest);
  out << "wrote " << o.out << " (" << library.size() << " templates, n=" << library.length()
      << ", vmax=" << library.vmax() << ")\n";
  return kExitOk;
}

// ---- bench ----------------------------------------------------------------

NoiseSpec ParseNoiseFlag(const std::string& text) {
  try {
    return ParseNoiseSpec(text);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

int CmdBench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  BenchmarkConfig config;
  config.noise = ParseNoiseFlag(o.noise);
  try {
    config.classifier = ParseClassifierKind(o.classifier);
    config.cfg.metric = ParseMetric(o.metric);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  config.cfg.theta = o.theta;
  config.samples_per_odorant = o.samples;
  config.num_simulations = o.sims;
  config.base_seed = o.seed;
  try {
    config.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  const LoadedLibrary lib = o.lib.empty() ? DefaultSyntheticLibrary(o.seed) : LoadFromFile(o.lib);
  std::ostringstream command;
  command << "odorbench bench" << (o.lib.empty() ? "" : " --lib " + o.lib) << " --classifier "
          << ToString(config.classifier) << " --theta " << FormatNumber(config.cfg.theta) << " --metric "
          << ToString(config.cfg.metric) << " --noise " << ToString(config.noise) << " --sims "
          << config.num_simulations << " --samples " << config.samples_per_odorant << " --seed " << config.base_seed;

  const auto start = std::chrono::steady_clock::now();
  const ExperimentReport report = RunBenchmark(config, lib.library, o.workers);
  Elapsed(err, start);

  const fs::path dir(o.out_dir);
  WriteJson(dir / (o.prefix + ".json"), Envelope(command.str(), lib, ReportToJson(report)));
  WriteTextFile(dir / (o.prefix + "_per_simulation.csv"), PerSimulationCsv(report));
  WriteTextFile(dir / (o.prefix + "_per_class.csv"), PerClassCsv(report));

  out << ToString(config.classifier) << ": mean accuracy " << Percent(report.mean_accuracy) << " +/- "
      << Percent(report.std_accuracy) << " over " << report.per_simulation_accuracy.size() << " simulations of "
      << report.samples_per_simulation << " samples\n";
  out << "reproduce: " << command.str() << '\n';
  return kExitOk;
}

// ---- repro ----------------------------------------------------------------

int ReproFig1a(const ReproOptions& o, const LoadedLibrary& lib, std::ostream& out) {
  if (o.count == 0) throw UsageError("--count must be >= 1");
  const Fig1aReport report = RunFig1a(lib.library, o.count, o.seed, o.theta);
  const std::string command = "odorbench repro fig1a --lib " + o.lib + " --seed " + std::to_string(o.seed) +
                              " --count " + std::to_string(o.count) + " --theta " + FormatNumber(o.theta);
  const fs::path dir(o.out_dir);
  WriteJson(dir / "fig1a.json", Envelope(command, lib, Fig1aToJson(report)));
  WriteTextFile(dir / "fig1a_plot.csv", Fig1aPlotCsv(report));

  out << "fig1a: " << report.count << " random vectors\n";
  out << "  forced_choice  known " << report.forced_choice.known << "/" << report.count
      << ", none_of_the_above " << report.forced_choice.rejected << ", every reported similarity 1.0: "
      << (report.forced_choice_always_unity ? "yes" : "no") << '\n';
  out << "  nn_threshold   known " << report.nn_threshold.known << "/" << report.count
      << ", none_of_the_above " << report.nn_threshold.rejected << " (theta " << FormatNumber(o.theta) << ")\n";
  out << "  reference      EPL network: " << kReferenceEplRandomKnown << " known, "
      << kReferenceEplRandomRejected << " none_of_the_above (published, not computed)\n";
  out << "reproduce: " << command << '\n';
  return report.forced_choice_always_unity ? kExitOk : kExitFailure;
}

int ReproFig1b(const ReproOptions& o, const LoadedLibrary& lib, std::ostream& out) {
  const Fig1bReport report = RunFig1b(lib.library, o.theta);
  const std::string command =
      "odorbench repro fig1b --lib " + o.lib + " --theta " + FormatNumber(o.theta);
  const fs::path dir(o.out_dir);
  WriteJson(dir / "fig1b.json", Envelope(command, lib, Fig1bToJson(report)));
  WriteTextFile(dir / "fig1b_plot.csv", Fig1bPlotCsv(report));

  out << "fig1b: templates offset by +" << report.offset << '\n';
  out << std::left << "  " << std::setw(16) << "true" << std::setw(20) << "forced_choice" << std::setw(10)
      << "reported" << std::setw(20) << "nn_threshold" << "reported\n";
  for (const auto& s : report.samples) {
    out << "  " << std::setw(16) << s.true_label << std::setw(20) << s.forced_choice_decision << std::setw(10)
        << FormatNumber(s.forced_choice_reported) << std::setw(20) << s.nn_decision << FormatNumber(s.nn_reported)
        << '\n';
  }
  out << "  correct: forced_choice " << report.forced_choice_correct << "/" << report.samples.size()
      << ", nn_threshold " << report.nn_correct << "/" << report.samples.size() << '\n';
  out << "reproduce: " << command << '\n';
  return kExitOk;
}

int ReproFig1c(const ReproOptions& o, const LoadedLibrary& lib, std::ostream& out, std::ostream& err) {
  BenchmarkConfig config;
  config.noise = ParseNoiseFlag(o.noise);
  config.cfg.theta = o.theta;
  config.samples_per_odorant = o.samples;
  config.num_simulations = o.sims;
  config.base_seed = o.seed;
  try {
    config.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const std::string command = "odorbench repro fig1c --lib " + o.lib + " --seed " + std::to_string(o.seed) +
                              " --theta " + FormatNumber(o.theta) + " --noise " + ToString(config.noise) +
                              " --sims " + std::to_string(o.sims) + " --samples " + std::to_string(o.samples) +
                              " --adversarial " + std::to_string(o.adversarial);

  const auto start = std::chrono::steady_clock::now();
  const Fig1cReport report = RunFig1c(lib.library, config, o.adversarial, o.workers);
  Elapsed(err, start);

  const fs::path dir(o.out_dir);
  WriteJson(dir / "fig1c.json", Envelope(command, lib, Fig1cToJson(report)));
  WriteTextFile(dir / "fig1c_plot.csv", Fig1cPlotCsv(report));
  std::ostringstream table;
  table << "simulation,modified_dennler,nn_threshold\n";
  for (std::size_t s = 0; s < report.nn_threshold.per_simulation_accuracy.size(); ++s) {
    table << s << ',' << FormatNumber(report.modified_dennler.per_simulation_accuracy[s]) << ','
          << FormatNumber(report.nn_threshold.per_simulation_accuracy[s]) << '\n';
  }
  WriteTextFile(dir / "fig1c_per_simulation.csv", table.str());

  out << "fig1c: " << o.sims << " simulations x " << report.nn_threshold.samples_per_simulation
      << " samples, noise " << ToString(config.noise) << ", theta " << FormatNumber(o.theta) << '\n';
  for (const auto* r : {&report.modified_dennler, &report.nn_threshold}) {
    out << "  " << std::left << std::setw(18) << ToString(r->config.classifier) << Percent(r->mean_accuracy)
        << " +/- " << Percent(r->std_accuracy) << '\n';
  }
  out << "  reference         " << Percent(kReferenceThresholdedAccuracy) << " (published)\n";
  out << "  per-simulation accuracies identical: " << (report.per_simulation_identical ? "yes" : "NO") << '\n';
  out << "  adversarial decisions: " << report.adversarial.disagreements << " disagreements over "
      << report.adversarial.inputs << " inputs\n";
  out << "reproduce: " << command << '\n';
  if (!report.equivalent()) {
    err << "equivalence assertion failed\n";
    return kExitFailure;
  }
  return kExitOk;
}

int CmdRepro(const ReproOptions& o, std::ostream& out, std::ostream& err) {
  if (o.theta < 0.0 || o.theta > 1.0) throw UsageError("--theta must lie in [0, 1]");
  const LoadedLibrary lib = LoadFromFile(o.lib);
  if (o.panel == "fig1a") return ReproFig1a(o, lib, out);
  if (o.panel == "fig1b") return ReproFig1b(o, lib, out);
  return ReproFig1c(o, lib, out, err);
}

// ---- probe ----------------------------------------------------------------

Signature ParseSignatureText(const std::string& text, const TemplateLibrary& library) {
  std::vector<Level> values;
  std::string token;
  std::istringstream in(text);
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.front() == '-' || v > library.vmax()) {
      throw UsageError("malformed signature value '" + token + "' (expected integers in 0.." +
                       std::to_string(library.vmax()) + ")");
    }
    values.push_back(static_cast<Level>(v));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '[' || c == ']') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  if (values.size() != library.length()) {
    throw UsageError("signature has " + std::to_string(values.size()) + " values, library expects " +
                     std::to_string(library.length()));
  }
  return Signature(std::move(values), library.vmax());
}

Json OutcomeToJson(ClassifierKind kind, const ClassificationOutcome& outcome) {
  Json doc;
  doc["classifier"] = ToString(kind);
  doc["decision"] = outcome.DecisionLabel();
  doc["reported_similarity"] = outcome.reported_similarity.value();
  doc["selected_index"] = outcome.selected_index ? Json(*outcome.selected_index) : Json(nullptr);
  Json scores;
  for (const auto& s : outcome.per_template_scores) scores[s.label] = s.score.value();
  doc["per_template_scores"] = std::move(scores);
  return doc;
}

int CmdProbe(const ProbeOptions& o, std::ostream& out) {
  if (o.theta < 0.0 || o.theta > 1.0) throw UsageError("--theta must lie in [0, 1]");
  const LoadedLibrary lib = LoadFromFile(o.lib);
  const std::string text = o.signature_file.empty() ? o.signature : ReadTextFile(o.signature_file);
  const Signature probe = ParseSignatureText(text, lib.library);
  const ClassifierConfig cfg{o.theta, Metric::kManhattanSimilarity};

  Json outcomes = Json::array();
  for (const auto kind : {ClassifierKind::kForcedChoice, ClassifierKind::kNnThreshold,
                          ClassifierKind::kModifiedDennler}) {
    const auto outcome = Classify(kind, probe, lib.library, cfg);
    out << ToString(kind) << ": decision " << outcome.DecisionLabel() << ", reported similarity "
        << FormatNumber(outcome.reported_similarity.value()) << '\n';
    for (const auto& s : outcome.per_template_scores) {
      out << "    " << std::left << std::setw(16) << s.label << FormatNumber(s.score.value()) << '\n';
    }
    outcomes.push_back(OutcomeToJson(kind, outcome));
  }
  if (!o.json_out.empty()) {
    Json report;
    report["theta"] = o.theta;
    report["signature"] = std::vector<Level>(probe.values().begin(), probe.values().end());
    report["outcomes"] = std::move(outcomes);
    WriteJson(o.json_out, Envelope("odorbench probe --lib " + o.lib, lib, std::move(report)));
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"forced-choice vs thresholded template classification benchmarks", "odorbench"};
  app.require_subcommand(1, 1);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a template library from the dataset or synthetic data");
  auto* synthetic_flag = ingest_cmd->add_flag("--synthetic", ingest.synthetic, "Generate a synthetic dataset");
  auto* data_opt = ingest_cmd->add_option("--data", ingest.data,
                                          "Dataset directory (default: $" + std::string(kDataEnvVar) + ")");
  synthetic_flag->excludes(data_opt);
  ingest_cmd->add_option("--map", ingest.map, "Column map: 'default' or a JSON array file of 72 column indices");
  ingest_cmd->add_option("--feature", ingest.feature, "Feature extractor: max | window:START-END");
  ingest_cmd->add_option("--levels", ingest.levels, "Quantization levels")->check(CLI::Range(2, 65536));
  ingest_cmd->add_option("--feature-min", ingest.feature_min, "Quantizer lower clip (default: fitted)");
  ingest_cmd->add_option("--feature-max", ingest.feature_max, "Quantizer upper clip (default: fitted)");
  ingest_cmd->add_option("--odorant", ingest.odorant_filter, "Keep only these odorant directories");
  ingest_cmd->add_option("--location", ingest.location_filter, "Keep only files under these directory names");
  ingest_cmd->add_option("--date-prefix", ingest.date_prefix, "Keep only files whose name starts with this");
  ingest_cmd->add_option("--glob", ingest.glob, "File name pattern");
  ingest_cmd->add_option("--odorants", ingest.odorants, "Synthetic: number of odorants")->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--trials", ingest.trials, "Synthetic: trials per odorant")->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--n", ingest.length, "Synthetic: signature length")->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--vmax", ingest.vmax, "Synthetic: highest level");
  ingest_cmd->add_option("--seed", ingest.seed, "Seed for synthesis and template selection");
  ingest_cmd->add_option("--out", ingest.out, "Template library JSON to write")->required();
  ingest_cmd->add_option("--manifest", ingest.manifest, "Manifest JSON (default: <out>.manifest.json)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the Monte Carlo occlusion benchmark");
  bench_cmd->add_option("--lib", bench.lib, "Template library JSON (default: synthetic library from --seed)");
  bench_cmd->add_option("--classifier", bench.classifier, "forced_choice | nn_threshold | modified_dennler");
  bench_cmd->add_option("--theta", bench.theta, "Rejection threshold")->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--metric", bench.metric, "manhattan_similarity | jaccard_pairset (nn_threshold only)");
  bench_cmd->add_option("--noise", bench.noise, "Noise: " + std::string(kNoiseGrammar));
  bench_cmd->add_option("--sims", bench.sims, "Number of simulations")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--samples", bench.samples, "Samples per odorant")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--workers", bench.workers, "Worker threads (0 = all cores); never changes results");
  bench_cmd->add_option("--out-dir", bench.out_dir, "Output directory");
  bench_cmd->add_option("--prefix", bench.prefix, "Output file prefix");

  ReproOptions repro;
  auto* repro_cmd = app.add_subcommand("repro", "Reproduce one probe panel: fig1a, fig1b or fig1c");
  repro_cmd->add_option("panel", repro.panel, "fig1a | fig1b | fig1c")
      ->required()
      ->check(CLI::IsMember({"fig1a", "fig1b", "fig1c"}));
  repro_cmd->add_option("--lib", repro.lib, "Template library JSON")->required();
  repro_cmd->add_option("--seed", repro.seed, "Base seed");
  repro_cmd->add_option("--count", repro.count, "fig1a: number of random vectors");
  repro_cmd->add_option("--theta", repro.theta, "Rejection threshold")->check(CLI::Range(0.0, 1.0));
  repro_cmd->add_option("--noise", repro.noise, "fig1c: noise, " + std::string(kNoiseGrammar));
  repro_cmd->add_option("--sims", repro.sims, "fig1c: simulations")->check(CLI::PositiveNumber);
  repro_cmd->add_option("--samples", repro.samples, "fig1c: samples per odorant")->check(CLI::PositiveNumber);
  repro_cmd->add_option("--adversarial", repro.adversarial, "fig1c: extra mixed inputs for the decision check");
  repro_cmd->add_option("--workers", repro.workers, "Worker threads (0 = all cores); never changes results");
  repro_cmd->add_option("--out-dir", repro.out_dir, "Output directory");

  ProbeOptions probe;
  auto* probe_cmd = app.add_subcommand("probe", "Classify one signature with every classifier");
  probe_cmd->add_option("--lib", probe.lib, "Template library JSON")->required();
  auto* inline_opt = probe_cmd->add_option("--signature", probe.signature, "Comma-separated levels");
  auto* file_opt = probe_cmd->add_option("--signature-file", probe.signature_file, "File holding the levels");
  inline_opt->excludes(file_opt);
  probe_cmd->add_option("--theta", probe.theta, "Rejection threshold")->check(CLI::Range(0.0, 1.0));
  probe_cmd->add_option("--json", probe.json_out, "Also write the outcomes as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*ingest_cmd) return CmdIngest(ingest, out, err);
    if (*bench_cmd) return CmdBench(bench, out, err);
    if (*repro_cmd) return CmdRepro(repro, out, err);
    if (probe.signature.empty() && probe.signature_file.empty()) {
      throw UsageError("probe needs --signature or --signature-file");
    }
    return CmdProbe(probe, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace odorbench
