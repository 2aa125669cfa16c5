#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rxsynth/regex.hpp"

namespace rxsynth {

struct Confusion {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;  // fp: missed positive, fn: accepted negative
};

Confusion classify(const Regex& r, const std::vector<std::string>& positives,
                   const std::vector<std::string>& negatives);

/// (TP + TN - FP - FN) / (|P| + |N|) * 100, in [-100, 100]. Throws
/// std::invalid_argument when both sets are empty.
double sem_acc(const Confusion& c);
double sem_acc(const Regex& r, const std::vector<std::string>& positives, const std::vector<std::string>& negatives);

/// Every eval example classified correctly, i.e. sem_acc == 100.
bool fully_accurate(const Regex& r, const std::vector<std::string>& positives,
                    const std::vector<std::string>& negatives);

/// One synthesis attempt as it appears in a report.
struct RunRow {
  std::size_t instance = 0;
  std::string target;
  std::string status;  // success, timeout, unsat, split-failure, invalid, error
  double elapsed = 0;  // seconds
  std::optional<std::string> regex;
  std::optional<double> sem_acc;  // eval accuracy, successes only
  bool fully_accurate = false;
  int engine_calls = 0;
  std::string detail;

  bool success() const { return status == "success"; }
};

/// Per-report aggregates. Failed attempts count as accuracy 0 and as
/// `timeout` seconds of runtime.
struct Aggregate {
  std::size_t instances = 0;
  std::size_t successes = 0;
  double success_rate = 0;     // %
  double mean_acc = 0;         // %
  double full_ratio = 0;       // %
  double mean_runtime = 0;     // s
  double success_runtime = 0;  // s, over this report's successes

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

Aggregate aggregate(const std::vector<RunRow>& rows, double timeout);

/// Head-to-head comparison of two reports over the same instances.
struct Comparison {
  std::size_t contested = 0;   // instances where at least one side succeeded
  std::size_t only_a = 0, only_b = 0, joint = 0;
  double win_a = 0, win_b = 0;          // % of contested; ties count half to each
  double runtime_a = 0, runtime_b = 0;  // s, failures count as the timeout
  double joint_runtime_a = 0, joint_runtime_b = 0;  // s, over joint successes
};

/// Rows are matched by instance index; instances missing from either side
/// are ignored.
Comparison compare(const std::vector<RunRow>& a, const std::vector<RunRow>& b, double timeout_a,
                   double timeout_b);

}  // namespace rxsynth
