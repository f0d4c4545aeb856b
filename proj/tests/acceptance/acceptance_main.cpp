// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Oracles here are written independently of the library code.
#include <unistd.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "odorbench/classifiers.hpp"
#include "odorbench/cli.hpp"
#include "odorbench/experiments.hpp"
#include "odorbench/ingest.hpp"
#include "odorbench/library_io.hpp"
#include "odorbench/noise.hpp"
#include "odorbench/similarity.hpp"

namespace fs = std::filesystem;
using namespace odorbench;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void Note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

std::string Fixed(double v, int digits = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

TemplateLibrary DefaultLibrary(std::uint64_t seed = 0) {
  SynthesisConfig config;
  config.seed = seed;
  return BuildLibrary(SynthesizeDataset(config).samples, seed);
}

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("odorbench_acceptance_" + name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

Outcome RandomVectorProbe() {
  Outcome o;
  const TemplateLibrary lib = DefaultLibrary();
  const auto start = Clock::now();
  const Fig1aReport r = RunFig1a(lib, 100, 2024, 0.75);
  const double elapsed = Seconds(start);
  o.Require(r.forced_choice.known == 100, "forced_choice known " + std::to_string(r.forced_choice.known) + "/100");
  o.Require(std::all_of(r.forced_choice.reported_similarities.begin(), r.forced_choice.reported_similarities.end(),
                        [](double s) { return s == 1.0; }),
            "forced_choice reported a similarity other than 1.0");
  o.Require(r.nn_threshold.rejected == 100, "nn_threshold rejected " + std::to_string(r.nn_threshold.rejected) + "/100");
  o.Require(elapsed < 1.0, "runtime " + Fixed(elapsed) + " s");
  o.Note("forced_choice " + std::to_string(r.forced_choice.known) + "/100 known at 1.0, nn_threshold " +
         std::to_string(r.nn_threshold.rejected) + "/100 rejected, " + Fixed(elapsed) + " s (published EPL: " +
         std::to_string(kReferenceEplRandomRejected) + "/100 rejected, not computed)");
  return o;
}

Outcome OffsetProbe() {
  Outcome o;
  const TemplateLibrary lib = DefaultLibrary();
  const auto start = Clock::now();
  const Fig1bReport r = RunFig1b(lib, 0.75);
  const double elapsed = Seconds(start);
  o.Require(r.samples.size() == 10, "expected 10 probes");
  o.Require(r.forced_choice_correct == 0, "forced_choice correct " + std::to_string(r.forced_choice_correct));
  o.Require(r.nn_correct == 10, "nn_threshold correct " + std::to_string(r.nn_correct));
  o.Require(elapsed < 1.0, "runtime " + Fixed(elapsed) + " s");
  o.Note("forced_choice " + std::to_string(r.forced_choice_correct) + "/10, nn_threshold " +
         std::to_string(r.nn_correct) + "/10, " + Fixed(elapsed) + " s");
  return o;
}

Outcome ThresholdEquivalence() {
  Outcome o;
  const TemplateLibrary lib = DefaultLibrary();
  BenchmarkConfig base;
  base.samples_per_odorant = 100;  // 10 templates x 100 = 1000 samples per simulation
  base.num_simulations = 100;
  base.noise = NoiseSpec::ImpulseRange(0.2, 0.8);
  base.cfg.theta = 0.75;
  base.base_seed = 1;
  const auto start = Clock::now();
  const Fig1cReport r = RunFig1c(lib, base, 10000);
  const double elapsed = Seconds(start);

  const auto& a = r.modified_dennler.per_simulation_accuracy;
  const auto& b = r.nn_threshold.per_simulation_accuracy;
  o.Require(a.size() == 100 && b.size() == 100, "expected 100 simulations");
  o.Require(r.nn_threshold.samples_per_simulation == 1000, "expected 1000 samples per simulation");
  bool identical = a.size() == b.size();
  for (std::size_t i = 0; identical && i < a.size(); ++i) {
    identical = std::bit_cast<std::uint64_t>(a[i]) == std::bit_cast<std::uint64_t>(b[i]);
  }
  o.Require(identical, "per-simulation accuracy lists differ");
  o.Require(r.adversarial.inputs >= 10000, "only " + std::to_string(r.adversarial.inputs) + " adversarial inputs");
  o.Require(r.adversarial.disagreements == 0,
            std::to_string(r.adversarial.disagreements) + " adversarial disagreements");
  o.Require(elapsed < 60.0, "runtime " + Fixed(elapsed) + " s");
  o.Note("100x1000 lists bit-identical, " + std::to_string(r.adversarial.disagreements) + "/" +
         std::to_string(r.adversarial.inputs) + " adversarial disagreements, local accuracy " +
         Fixed(100.0 * r.nn_threshold.mean_accuracy, 2) + "% +/- " + Fixed(100.0 * r.nn_threshold.std_accuracy, 2) +
         "% (published " + Fixed(100.0 * kReferenceThresholdedAccuracy, 1) + "%), " + Fixed(elapsed, 2) + " s");
  return o;
}

Outcome MedianCritique() {
  Outcome o;
  const TemplateLibrary lib = DefaultLibrary();
  SampleMap samples;
  for (std::size_t t = 0; t < lib.size(); ++t) {
    // Six exact copies of the own template; four exact copies of the next
    // template, which forced choice must assign to that other class.
    auto& row = samples[lib[t].label];
    for (int i = 0; i < 6; ++i) row.push_back(lib[t].signature);
    for (int i = 0; i < 4; ++i) row.push_back(lib[(t + 1) % lib.size()].signature);
  }
  const Fig2Report r = RunFig2Critique(lib, samples);
  o.Require(r.rows.size() == lib.size(), "one row per class expected");
  for (const auto& row : r.rows) {
    o.Require(row.correct == 6 && row.samples == 10, row.label + " correct " + std::to_string(row.correct));
    o.Require(row.accuracy == 0.6, row.label + " accuracy " + Fixed(row.accuracy));
    o.Require(row.own_median == 1.0, row.label + " median " + Fixed(row.own_median));
  }
  o.Require(r.overall_accuracy == 0.6, "overall accuracy " + Fixed(r.overall_accuracy));
  o.Note("every class: median similarity " + Fixed(r.rows.front().own_median, 1) + ", accuracy " +
         Fixed(r.rows.front().accuracy, 1));
  return o;
}

// Set of (index, value) pairs as a bitmask: bit i * (vmax + 1) + v.
std::uint32_t PairSet(const std::vector<Level>& v, Level vmax) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < v.size(); ++i) bits |= std::uint32_t{1} << (i * (vmax + 1u) + v[i]);
  return bits;
}

double OracleJaccard(std::uint32_t a, std::uint32_t b) {
  return static_cast<double>(std::popcount(a & b)) / static_cast<double>(std::popcount(a | b));
}

double OracleManhattanSimilarity(const std::vector<Level>& a, const std::vector<Level>& b, Level vmax) {
  if (vmax == 0) return 1.0;
  long steps = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    // Walk one level at a time from the lower value to the higher.
    for (Level x = std::min(a[i], b[i]); x < std::max(a[i], b[i]); ++x) ++steps;
  }
  return 1.0 - static_cast<double>(steps) / (static_cast<double>(a.size()) * vmax);
}

struct MetricTally {
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::string first;
};

void CheckPair(const std::vector<Level>& va, const std::vector<Level>& vb, Level vmax, MetricTally& t) {
  const Signature a(va, vmax);
  const Signature b(vb, vmax);
  const bool equal = va == vb;
  const double j = JaccardPairset(a, b).value();
  const double m = ManhattanSimilarity(a, b).value();
  const double oj = OracleJaccard(PairSet(va, vmax), PairSet(vb, vmax));
  const double om = OracleManhattanSimilarity(va, vb, vmax);
  bool ok = std::abs(j - oj) <= 1e-12 && std::abs(m - om) <= 1e-12;
  ok = ok && j == JaccardPairset(b, a).value() && m == ManhattanSimilarity(b, a).value();
  ok = ok && j >= 0.0 && j <= 1.0 && m >= 0.0 && m <= 1.0;
  ok = ok && (j == 1.0) == equal;
  // Every level vector is identical when vmax == 0, so value-1-iff-equal
  // still applies there.
  ok = ok && (m == 1.0) == equal;
  ok = ok && MatchCount(a, b) == static_cast<std::size_t>(std::popcount(PairSet(va, vmax) & PairSet(vb, vmax)));
  ++t.cases;
  if (!ok) {
    if (t.violations == 0) t.first = "n=" + std::to_string(va.size()) + " vmax=" + std::to_string(vmax);
    ++t.violations;
  }
}

std::vector<Level> Decode(std::uint64_t code, std::size_t n, Level vmax) {
  std::vector<Level> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<Level>(code % (vmax + 1u));
    code /= vmax + 1u;
  }
  return v;
}

Outcome MetricSuite() {
  Outcome o;
  MetricTally exhaustive;
  MetricTally random;
  const auto start = Clock::now();
  for (std::size_t n = 1; n <= 6; ++n) {
    for (Level vmax = 0; vmax <= 3; ++vmax) {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < n; ++i) count *= vmax + 1u;
      std::vector<std::vector<Level>> all;
      all.reserve(count);
      for (std::uint64_t c = 0; c < count; ++c) all.push_back(Decode(c, n, vmax));
      for (const auto& a : all) {
        for (const auto& b : all) CheckPair(a, b, vmax, exhaustive);
      }
    }
  }
  // Random cases over the same space, drawn with a generator the library
  // does not use, on top of the exhaustive enumeration.
  std::mt19937_64 gen(5);
  for (int i = 0; i < 100000; ++i) {
    const std::size_t n = 5 + gen() % 2;
    const Level vmax = static_cast<Level>(gen() % 4);
    std::vector<Level> a(n);
    std::vector<Level> b(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = static_cast<Level>(gen() % (vmax + 1u));
      b[k] = static_cast<Level>(gen() % (vmax + 1u));
    }
    CheckPair(a, b, vmax, random);
  }
  o.Require(exhaustive.violations == 0,
            std::to_string(exhaustive.violations) + " exhaustive violations, first at " + exhaustive.first);
  o.Require(random.violations == 0, std::to_string(random.violations) + " random violations, first at " + random.first);
  o.Require(random.cases >= 100000, "too few random cases");
  o.Note(std::to_string(exhaustive.cases) + " exhaustive pairs (n<=6, vmax<=3) and " + std::to_string(random.cases) +
         " random pairs, 0 violations, " + Fixed(Seconds(start), 2) + " s");
  return o;
}

Outcome ThresholdMonotonicity() {
  Outcome o;
  const std::vector<double> thetas{0.0, 0.25, 0.5, 0.75, 1.0};
  std::uint64_t inputs = 0;
  std::uint64_t nesting = 0;
  std::uint64_t unsound = 0;
  std::uint64_t known_total = 0;
  const std::vector<TemplateLibrary> libraries{DefaultLibrary(0), DefaultLibrary(11)};
  for (std::size_t l = 0; l < libraries.size(); ++l) {
    const TemplateLibrary& lib = libraries[l];
    for (const Signature& input : GenerateMixedInputs(lib, 6000, 900 + l)) {
      ++inputs;
      bool previous_known = true;
      for (const double theta : thetas) {
        const auto out = ClassifyNnThreshold(input, lib, ClassifierConfig{theta, Metric::kManhattanSimilarity});
        // Independent score for the emitted label.
        if (out.is_known()) {
          ++known_total;
          const Signature& chosen = lib[*out.selected_index].signature;
          std::uint64_t d = 0;
          for (std::size_t i = 0; i < input.size(); ++i) {
            d += static_cast<std::uint64_t>(std::abs(int{input[i]} - int{chosen[i]}));
          }
          const double score = 1.0 - static_cast<double>(d) / (static_cast<double>(input.size()) * lib.vmax());
          if (!(score > theta)) ++unsound;
        }
        // A known decision at a higher theta requires one at every lower theta.
        if (out.is_known() && !previous_known) ++nesting;
        previous_known = out.is_known();
      }
    }
  }
  o.Require(inputs >= 10000, "only " + std::to_string(inputs) + " inputs");
  o.Require(nesting == 0, std::to_string(nesting) + " nesting violations");
  o.Require(unsound == 0, std::to_string(unsound) + " known labels at score <= theta");
  o.Note(std::to_string(inputs) + " mixed inputs x 5 thresholds, " + std::to_string(known_total) +
         " known decisions, 0 violations");
  return o;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome CliDeterminism() {
  Outcome o;
  ScratchDir dir("determinism");
  const auto p = [&](const std::string& name) { return (dir.path() / name).string(); };
  const auto run = [&](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = RunCli(args, out, err);
    if (code != 0) o.Require(false, "exit " + std::to_string(code) + ": " + err.str());
  };

  // Same flags and paths every time; each run's outputs are moved aside
  // before the next so the comparison covers complete file sets.
  const std::vector<std::string> runs{"a", "b", "c"};
  const std::vector<std::string> workers{"1", "1", "4"};
  const std::string out = p("out");
  const std::string lib = out + "/lib.json";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    run({"ingest", "--synthetic", "--seed", "5", "--out", lib});
    run({"bench", "--lib", lib, "--sims", "8", "--samples", "50", "--seed", "3", "--noise", "impulse:0.2-0.8",
         "--workers", workers[r], "--out-dir", out});
    run({"bench", "--lib", lib, "--classifier", "forced_choice", "--noise", "random", "--sims", "4", "--seed", "3",
         "--workers", workers[r], "--out-dir", out, "--prefix", "fc"});
    run({"repro", "fig1a", "--lib", lib, "--seed", "3", "--out-dir", out});
    run({"repro", "fig1b", "--lib", lib, "--out-dir", out});
    run({"repro", "fig1c", "--lib", lib, "--seed", "3", "--sims", "6", "--samples", "40", "--adversarial", "1200",
         "--workers", workers[r], "--out-dir", out});
    fs::rename(out, p(runs[r]));
  }

  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir.path() / "a")) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), dir.path() / "a");
    const std::string reference = Slurp(entry.path());
    for (const std::string other : {"b", "c"}) {
      const fs::path twin = dir.path() / other / rel;
      o.Require(fs::exists(twin) && Slurp(twin) == reference, rel.string() + " differs in run " + other);
    }
    ++compared;
  }
  o.Require(compared >= 12, "only " + std::to_string(compared) + " output files");
  o.Note(std::to_string(compared) + " JSON/CSV files byte-identical over 3 runs (workers 1, 1, 4)");
  return o;
}

Outcome Ingestion() {
  Outcome o;
  // Fixture round trip: known level vectors written as constant channels at
  // v + 0.5 must come back as the same levels under a fixed [0, 16) range.
  ScratchDir dir("ingest");
  std::mt19937_64 gen(8);
  std::map<std::string, std::vector<std::vector<Level>>> expected;
  for (const std::string odorant : {"Ammonia", "Ethylene", "Methanol"}) {
    for (int t = 0; t < 4; ++t) {
      std::vector<Level> levels(kSensorCount);
      for (auto& v : levels) v = static_cast<Level>(gen() % 16);
      expected[odorant].push_back(levels);
      const fs::path file = dir.path() / odorant / "L3" / ("20110" + std::to_string(t) + "01000_run");
      fs::create_directories(file.parent_path());
      std::ofstream out(file);
      for (int row = 0; row < 25; ++row) {
        out << row * 100 << ' ' << 23.0 << ' ' << 35.0;
        // Readings ramp up to the plateau on the last rows.
        const double scale = row < 20 ? row / 20.0 : 1.0;
        for (Level v : levels) out << ' ' << (v + 0.5) * scale;
        out << '\n';
      }
    }
  }
  IngestConfig config = IngestConfig::Default();
  config.fit_quantizer_range = false;
  config.quantizer = QuantizerConfig{16, 0.0, 16.0};
  const ParseResult parsed = ParseTrials(dir.path(), config);
  o.Require(parsed.trials.size() == 12 && parsed.warnings == 0 && parsed.file_errors.empty(),
            "parse produced " + std::to_string(parsed.trials.size()) + " trials");
  const SampleMap samples = FeaturizeAll(parsed.trials, config);
  bool exact = samples.size() == expected.size();
  for (const auto& [label, rows] : expected) {
    const auto it = samples.find(label);
    exact = exact && it != samples.end() && it->second.size() == rows.size();
    for (std::size_t t = 0; exact && t < rows.size(); ++t) {
      const auto values = it->second[t].values();
      exact = std::equal(values.begin(), values.end(), rows[t].begin(), rows[t].end());
    }
  }
  o.Require(exact, "fixture levels did not round-trip");

  // Library file round trip.
  const TemplateLibrary lib = BuildLibrary(samples, 1);
  SaveLibrary(lib, dir.path() / "lib.json");
  const TemplateLibrary reloaded = LoadLibrary(dir.path() / "lib.json");
  o.Require(SerializeLibrary(reloaded) == SerializeLibrary(lib), "library JSON did not round-trip");

  // Separation bound on every generation.
  std::size_t generations = 0;
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SynthesisConfig synth;
    synth.seed = seed;
    const SyntheticDataset data = SynthesizeDataset(synth);
    ++generations;
    for (std::size_t a = 0; a < data.prototypes.size(); ++a) {
      for (std::size_t b = a + 1; b < data.prototypes.size(); ++b) {
        const double s = OracleManhattanSimilarity(
            {data.prototypes[a].signature.values().begin(), data.prototypes[a].signature.values().end()},
            {data.prototypes[b].signature.values().begin(), data.prototypes[b].signature.values().end()}, synth.vmax);
        worst = std::max(worst, s);
        if (!(s < synth.separation_bound)) ++violations;
      }
    }
  }
  o.Require(violations == 0, std::to_string(violations) + " prototype pairs at or above 0.5");

  // Nothing above needs the public dataset; make sure it is not configured.
  o.Require(std::getenv(std::string(kDataEnvVar).c_str()) == nullptr ||
                !fs::exists(std::getenv(std::string(kDataEnvVar).c_str())),
            std::string(kDataEnvVar) + " points at an existing dataset");
  o.Note("12 fixture trials round-trip exactly, " + std::to_string(generations) +
         " synthetic generations, max prototype similarity " + Fixed(worst) + ", no dataset present");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"random-vector probe: forced choice always known at 1.0, threshold rejects all", RandomVectorProbe},
      {"offset probe: forced choice 0/10, threshold 10/10", OffsetProbe},
      {"modified forced choice and threshold classifier are equivalent", ThresholdEquivalence},
      {"per-class median similarity 1.0 at accuracy 0.6", MedianCritique},
      {"metric properties against pair-set oracle", MetricSuite},
      {"threshold monotonicity and rejection soundness", ThresholdMonotonicity},
      {"CLI outputs byte-identical across runs and worker counts", CliDeterminism},
      {"ingestion round trip and synthetic separation", Ingestion},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << ": " << criteria[i].first
              << " -- " << outcome.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
