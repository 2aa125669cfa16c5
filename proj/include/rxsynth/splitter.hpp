#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "rxsynth/examples.hpp"
#include "rxsynth/regex.hpp"

namespace rxsynth {

/// Parts P_1..P_S and the S+1 wildcard slots around them, one entry per
/// labeled string (λ is the empty string).
struct SplitPartition {
  int parts = 0;  // S
  std::vector<std::vector<std::string>> part_strings;  // [part][string]
  std::vector<std::vector<std::string>> slot_strings;  // [slot][string]
  std::vector<bool> wildcard_slots;                    // S+1 flags
  std::vector<SplitLabeling> source_labelings;

  /// Distinct substrings of part i (0-based), in first-seen order.
  std::vector<std::string> distinct_part(std::size_t i) const;
  /// slot 0, part 1, slot 1, ..., part S, slot S of string k, concatenated.
  std::string reconstruct(std::size_t k) const;
};

/// Throws LabelingError (InvalidLabeling / InconsistentLength).
SplitPartition partition_from_labelings(const std::vector<SplitLabeling>& labelings);

std::vector<SplitLabeling> ground_truth_split(const Regex& target, const std::vector<std::string>& positives);

/// Makes a predicted label string valid: a run whose label was already
/// closed by another label takes the label of the run before it; then any
/// run whose label is below an earlier one becomes 0.
std::string repair_labels(const std::string& labels);

/// Predictions keyed by exact string, read once from a JSON Lines file of
/// {"string": ..., "labels": ...} records. Labels are repaired on load.
class PredictionTable {
 public:
  /// Throws SchemaError (with line number) or Error if the file is missing.
  static PredictionTable load(const std::string& path);
  static PredictionTable from_records(const std::vector<SplitLabeling>& records);

  /// Throws MissingPredictionError if some positive has no record.
  std::vector<SplitLabeling> labelings_for(const std::vector<std::string>& positives) const;
  std::size_t size() const { return labels_.size(); }

 private:
  std::map<std::string, std::string> labels_;
};

std::vector<SplitLabeling> load_predictions(const std::string& path, const std::vector<std::string>& positives);

/// Labels maximal runs of equal symbols by aligning them with the runs of
/// the lexicographically smallest positive; runs that do not align get 0.
std::vector<SplitLabeling> heuristic_runs_split(const std::vector<std::string>& positives);

struct GroundTruthSplitter {
  Regex target;
};
struct FileSplitter {
  std::string path;
  std::shared_ptr<const PredictionTable> table;  // loaded once, shared
};
struct RunsSplitter {};

using SplitterKind = std::variant<GroundTruthSplitter, FileSplitter, RunsSplitter>;

/// Loads the prediction file behind a FileSplitter.
FileSplitter file_splitter(const std::string& path);

std::vector<SplitLabeling> run_splitter(const SplitterKind& splitter, const std::vector<std::string>& positives);

std::string splitter_name(const SplitterKind& splitter);

}  // namespace rxsynth
