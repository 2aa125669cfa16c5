#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rxsynth/automaton.hpp"
#include "rxsynth/engine.hpp"
#include "rxsynth/examples.hpp"

namespace rxsynth {

enum class StateLabel : std::uint8_t { Unknown, Accept, Reject };

/// Prefix-tree acceptor. States are numbered breadth-first with children in
/// alphabet order, so the numbering does not depend on example order.
struct Apta {
  Alphabet alphabet;
  std::vector<std::vector<int>> next;  // state x symbol index -> state or -1
  std::vector<StateLabel> label;
  int root = 0;

  std::size_t size() const { return label.size(); }
};

/// Throws ConflictError if a string is both positive and negative.
Apta build_apta(const ExamplePair& pair);

/// Evidence-driven red/blue state merging. Unknown states of the result
/// accept. Returns nullopt if the deadline passes first.
std::optional<Dfa> run_bluefringe(const ExamplePair& pair, const Deadline& deadline = Deadline(1e9));

/// State elimination on the trimmed automaton, removing the state with the
/// smallest in-degree x out-degree first. Parallel edges that cover the
/// whole alphabet become `.`.
Regex dfa_to_regex(const Dfa& d);

/// Strings v with u·v·w = n for some negative n, u in L(prefix), w in
/// L(suffix). R rejects all of these iff prefix·R·suffix rejects N.
std::vector<std::string> context_negatives(const std::vector<std::string>& negatives, const Regex& prefix,
                                           const Regex& suffix);

class BlueFringe : public SynthEngine {
 public:
  std::string name() const override { return "bluefringe"; }
  /// `max_states` is ignored; the merge loop always terminates.
  SynthOutcome synthesize(const SynthesisProblem& problem, const Deadline& deadline,
                          std::size_t max_states) const override;
};

}  // namespace rxsynth
