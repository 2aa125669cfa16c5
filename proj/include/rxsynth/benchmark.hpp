#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rxsynth/engine.hpp"
#include "rxsynth/examples.hpp"
#include "rxsynth/metrics.hpp"
#include "rxsynth/split_synthesis.hpp"

namespace rxsynth {

/// Random ASTs over the digit alphabet of `alphabet_size` symbols, grown with
/// node weights Literal .35, Concat .25, Union .15, Star .12, Question .08,
/// Wildcard .05 under a depth cap of 8 and a size cap of 25, then simplified.
std::vector<Regex> gen_random_regexes(std::size_t count, std::size_t alphabet_size, std::uint64_t seed);

/// Regex files hold one target per line: toolkit syntax, a tab, and the
/// alphabet symbols. Without the tab column the alphabet is the regex's
/// literal symbols.
std::string format_regex_line(const Regex& r, const Alphabet& alphabet);

struct BenchmarkInstance {
  std::size_t index = 0;  // source line, 0-based
  Regex target;
  ExamplePair train;
  ExamplePair eval;
  std::vector<SplitLabeling> labelings;  // ground truth for train positives
};

struct SkippedLine {
  std::size_t index = 0;
  std::string source;
  std::string reason;
};

enum class NegMode { SymbolPerturb, RegexPerturb };
NegMode parse_neg_mode(const std::string& name);  // "symbol" or "regex"

struct InstanceConfig {
  int count_pos = 20;
  int count_neg = 20;
  int max_len = 10;
  NegMode neg_mode = NegMode::SymbolPerturb;
  std::uint64_t seed = 0;
  bool preprocess = false;  // lines are practical regexes for preprocess_raw
};

struct InstanceSet {
  std::vector<BenchmarkInstance> instances;
  std::vector<SkippedLine> skips;
};

/// Builds one instance per usable line; half of each polarity is for
/// training, the rest for evaluation. Line k draws from derive_seed(seed, k).
InstanceSet make_instances(const std::vector<std::string>& lines, const InstanceConfig& config);
InstanceSet make_instances(const std::vector<Regex>& targets, const Alphabet& alphabet,
                           const InstanceConfig& config);

std::vector<std::string> read_lines(const std::string& path);

/// Dataset JSONL, one object per instance with keys regex, alphabet,
/// pos_train, neg_train, pos_eval, neg_eval, labels. Skips go to
/// `<path>.skips.jsonl`.
void write_dataset(const std::string& path, const InstanceSet& set);
/// Throws SchemaError on malformed records.
InstanceSet read_dataset(const std::string& path);

struct RunConfig {
  std::string engine = "alpharegex";  // or "bluefringe"
  std::string mode = "vanilla";       // or "split"
  std::string splitter = "gt";        // gt, runs, file:PATH
  Strategy strategy = Strategy::IndependentSequential;
  double timeout = 3.0;
  std::size_t jobs = 1;
  std::size_t max_states = 2'000'000;
  bool fallback = false;
};

std::unique_ptr<SynthEngine> make_engine(const std::string& name);

/// Checks a claimed solution against the train examples with two unrelated
/// matchers.
bool verify_consistency(const Regex& r, const ExamplePair& pair);

struct RunReport {
  RunConfig config;
  std::vector<RunRow> rows;
  std::vector<SkippedLine> skips;
  Aggregate summary;
};

/// Runs every instance under the wall-clock timeout, `jobs` at a time. Rows
/// come back in instance order whatever the job count.
RunReport run_benchmark(const std::vector<BenchmarkInstance>& instances, const RunConfig& config);

/// JSONL: a config line, one line per row and per skip, then the aggregate.
/// Also writes the aggregate as `<path>.csv`.
void write_report(const std::string& path, const RunReport& report);
/// Throws SchemaError on malformed files or when the stored aggregate does
/// not match the one recomputed from the rows.
RunReport read_report(const std::string& path);

std::string csv_header();
std::string csv_row(const RunReport& report);

}  // namespace rxsynth
