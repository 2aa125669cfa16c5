#include "rxsynth/splitter.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>

#include "rxsynth/error.hpp"

namespace rxsynth {

namespace {

struct Run {
  char label;
  std::size_t begin, end;
};

std::vector<Run> label_runs(const std::string& labels) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!runs.empty() && runs.back().label == labels[i]) {
      runs.back().end = i + 1;
    } else {
      runs.push_back({labels[i], i, i + 1});
    }
  }
  return runs;
}

}  // namespace

std::vector<std::string> SplitPartition::distinct_part(std::size_t i) const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& s : part_strings[i])
    if (seen.insert(s).second) out.push_back(s);
  return out;
}

std::string SplitPartition::reconstruct(std::size_t k) const {
  std::string out = slot_strings[0][k];
  for (int i = 0; i < parts; ++i) {
    out += part_strings[static_cast<std::size_t>(i)][k];
    out += slot_strings[static_cast<std::size_t>(i) + 1][k];
  }
  return out;
}

SplitPartition partition_from_labelings(const std::vector<SplitLabeling>& labelings) {
  SplitPartition out;
  for (const auto& l : labelings) {
    validate_labeling(l);
    out.parts = std::max(out.parts, max_label(l));
  }
  const auto S = static_cast<std::size_t>(out.parts);
  const std::size_t n = labelings.size();
  out.part_strings.assign(S, std::vector<std::string>(n));
  out.slot_strings.assign(S + 1, std::vector<std::string>(n));
  out.wildcard_slots.assign(S + 1, false);
  out.source_labelings = labelings;

  for (std::size_t k = 0; k < n; ++k) {
    const auto& l = labelings[k];
    auto runs = label_runs(l.labels);
    std::size_t last = 0;  // label of the most recent nonzero run
    for (std::size_t r = 0; r < runs.size(); ++r) {
      std::string piece = l.string.substr(runs[r].begin, runs[r].end - runs[r].begin);
      int v = label_value(runs[r].label);
      if (v > 0) {
        last = static_cast<std::size_t>(v);
        out.part_strings[last - 1][k] = piece;
        continue;
      }
      bool trailing = r + 1 == runs.size();
      std::size_t slot = last == 0 ? 0 : (trailing ? S : last);
      out.slot_strings[slot][k] = piece;
      out.wildcard_slots[slot] = true;
    }
  }
  return out;
}

std::vector<SplitLabeling> ground_truth_split(const Regex& target, const std::vector<std::string>& positives) {
  std::vector<SplitLabeling> out;
  out.reserve(positives.size());
  for (const auto& p : positives) out.push_back(ground_truth_labels(target, p));
  return out;
}

std::string repair_labels(const std::string& labels) {
  auto runs = label_runs(labels);
  std::set<char> closed;
  char open = '\0';
  for (std::size_t r = 0; r < runs.size(); ++r) {
    char& c = runs[r].label;
    if (c != '0' && closed.count(c)) c = r > 0 ? runs[r - 1].label : '0';
    if (c != open) {
      if (open != '\0') closed.insert(open);
      open = c;
    }
  }
  int highest = 0;
  for (auto& run : runs) {
    int v = label_value(run.label);
    if (v == 0) continue;
    if (v < highest) {
      run.label = '0';
    } else {
      highest = v;
    }
  }
  std::string out(labels.size(), '0');
  for (const auto& run : runs) std::fill(out.begin() + static_cast<std::ptrdiff_t>(run.begin),
                                         out.begin() + static_cast<std::ptrdiff_t>(run.end), run.label);
  return out;
}

PredictionTable PredictionTable::from_records(const std::vector<SplitLabeling>& records) {
  PredictionTable table;
  for (const auto& r : records) {
    if (r.labels.size() != r.string.size())
      throw SchemaError("labels for '" + r.string + "' have length " + std::to_string(r.labels.size()));
    for (char c : r.labels)
      if (label_value(c) < 0) throw SchemaError(std::string("bad label character '") + c + "'");
    // the first record for a string wins
    table.labels_.emplace(r.string, repair_labels(r.labels));
  }
  return table;
}

PredictionTable PredictionTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open prediction file " + path);
  std::vector<SplitLabeling> records;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      if (!j.is_object() || !j.contains("string") || !j.contains("labels") || !j["string"].is_string() ||
          !j["labels"].is_string())
        throw SchemaError("expected {\"string\": str, \"labels\": str}");
      records.push_back({j["string"].get<std::string>(), j["labels"].get<std::string>()});
      from_records({records.back()});
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(path + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return from_records(records);
}

std::vector<SplitLabeling> PredictionTable::labelings_for(const std::vector<std::string>& positives) const {
  std::vector<SplitLabeling> out;
  out.reserve(positives.size());
  for (const auto& p : positives) {
    auto it = labels_.find(p);
    if (it == labels_.end()) throw MissingPredictionError("no prediction for '" + p + "'");
    out.push_back({p, it->second});
  }
  return out;
}

std::vector<SplitLabeling> load_predictions(const std::string& path, const std::vector<std::string>& positives) {
  return PredictionTable::load(path).labelings_for(positives);
}

std::vector<SplitLabeling> heuristic_runs_split(const std::vector<std::string>& positives) {
  auto symbol_runs = [](const std::string& s) {
    std::vector<Run> runs;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!runs.empty() && s[runs.back().begin] == s[i]) {
        runs.back().end = i + 1;
      } else {
        runs.push_back({s[i], i, i + 1});
      }
    }
    return runs;
  };
  std::vector<char> classes;
  if (!positives.empty()) {
    const std::string& ref = *std::min_element(positives.begin(), positives.end());
    for (const auto& run : symbol_runs(ref)) classes.push_back(run.label);
  }
  const std::size_t cap = std::min<std::size_t>(classes.size(), kMaxParts);

  std::vector<SplitLabeling> out;
  for (const auto& s : positives) {
    SplitLabeling l{s, std::string(s.size(), '0')};
    std::size_t next = 0;
    for (const auto& run : symbol_runs(s)) {
      std::size_t k = next;
      while (k < cap && classes[k] != run.label) ++k;
      if (k == cap) continue;
      std::fill(l.labels.begin() + static_cast<std::ptrdiff_t>(run.begin),
                l.labels.begin() + static_cast<std::ptrdiff_t>(run.end), label_char(static_cast<int>(k) + 1));
      next = k + 1;
    }
    out.push_back(std::move(l));
  }
  return out;
}

FileSplitter file_splitter(const std::string& path) {
  return {path, std::make_shared<const PredictionTable>(PredictionTable::load(path))};
}

std::vector<SplitLabeling> run_splitter(const SplitterKind& splitter, const std::vector<std::string>& positives) {
  if (auto* gt = std::get_if<GroundTruthSplitter>(&splitter)) return ground_truth_split(gt->target, positives);
  if (auto* file = std::get_if<FileSplitter>(&splitter)) {
    if (!file->table) return load_predictions(file->path, positives);
    return file->table->labelings_for(positives);
  }
  return heuristic_runs_split(positives);
}

std::string splitter_name(const SplitterKind& splitter) {
  if (std::holds_alternative<GroundTruthSplitter>(splitter)) return "gt";
  if (auto* file = std::get_if<FileSplitter>(&splitter)) return "file:" + file->path;
  return "runs";
}

}  // namespace rxsynth
