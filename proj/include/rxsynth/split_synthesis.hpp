#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rxsynth/engine.hpp"
#include "rxsynth/examples.hpp"
#include "rxsynth/splitter.hpp"

namespace rxsynth {

enum class Strategy { IndependentSequential, IndependentParallel, PrefixConditionedAll };

/// "seq", "par", "prefix-all".
std::string strategy_name(Strategy s);
/// Throws std::invalid_argument for unknown names.
Strategy parse_strategy(const std::string& name);

enum class SplitStatus { Success, Timeout, SplitFailure };

struct SplitSynthesisResult {
  SplitStatus status = SplitStatus::SplitFailure;
  std::vector<std::optional<Regex>> subregexes;  // R_1..R_S; empty where not reached
  std::optional<Regex> final;
  std::vector<double> part_elapsed;  // seconds
  double total_elapsed = 0;
  int engine_calls = 0;
  bool fell_back = false;  // the final regex came from the whole-problem retry
  std::string detail;      // why a SplitFailure happened
};

struct SplitOptions {
  Strategy strategy = Strategy::IndependentSequential;
  /// On SplitFailure, retry the engine on the whole problem with the time
  /// that is left.
  bool fallback = false;
};

/// P_i ⊆ L(candidate) and L(prefix · candidate) ∩ N = ∅.
bool prefix_conditioned_accept(const Regex& prefix, const Regex& candidate, const std::vector<std::string>& part,
                               const std::vector<std::string>& negatives);

/// Synthesizes one subregex per part and concatenates them with `.*` at the
/// wildcard slots. All parts share one deadline.
SplitSynthesisResult synthesize_partition(const ExamplePair& pair, const SplitPartition& partition,
                                          const SynthEngine& engine, const SplitOptions& options,
                                          const Deadline& deadline, std::size_t max_states);

/// Runs the splitter, then synthesize_partition. The timeout covers both.
SplitSynthesisResult synthesize_split(const ExamplePair& pair, const SplitterKind& splitter,
                                      const SynthEngine& engine, const SplitOptions& options,
                                      const SynthesisBudget& budget);

}  // namespace rxsynth
