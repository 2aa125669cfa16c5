#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "rxsynth/engine.hpp"

namespace rxsynth {

struct SearchState {
  Regex tmpl;
  int cost = 0;
};

/// Search cost: 1 per node, plus 1 for every Wildcard. A Hole costs 1, which
/// is a lower bound on whatever replaces it.
int cost(const Regex& r);

/// Dedup key: the template with hole ids erased, nested unions and
/// concatenations flattened, and union operands sorted.
std::string dedup_key(const Regex& r);

/// Fills the leftmost hole with each alphabet symbol, `.`, `#|#`, `##`, `#*`
/// and `#?` (in that order), simplifying each successor. Successors whose
/// key is already in `visited` are dropped; new keys are added. Throws
/// std::invalid_argument if the template has no hole.
std::vector<SearchState> expand(const SearchState& state, const Alphabet& alphabet,
                                std::unordered_set<std::string>* visited = nullptr);

/// True iff the template with every hole read as `.*` misses some positive.
bool prune_overapprox(const Regex& tmpl, const std::vector<std::string>& positives);

/// True iff prefix · template · suffix, with every hole read as `@empty`,
/// matches some negative.
bool prune_underapprox(const Regex& tmpl, const std::vector<std::string>& negatives,
                       const Regex& prefix = Regex::epsilon(), const Regex& suffix = Regex::epsilon());

struct AlphaRegexOptions {
  bool prune = true;
  /// Called with the priority of every popped state (for instrumentation).
  std::function<void(int)> on_pop;
};

/// Best-first enumeration over hole templates. Equal priorities pop in
/// insertion order, so the result is deterministic.
class AlphaRegex : public SynthEngine {
 public:
  explicit AlphaRegex(AlphaRegexOptions options = {}) : options_(std::move(options)) {}

  std::string name() const override { return "alpharegex"; }
  SynthOutcome synthesize(const SynthesisProblem& problem, const Deadline& deadline,
                          std::size_t max_states) const override;

 private:
  AlphaRegexOptions options_;
};

}  // namespace rxsynth
