#include "rxsynth/engine.hpp"

#include "rxsynth/matcher.hpp"

namespace rxsynth {

bool accepts_candidate(const SynthesisProblem& problem, const Regex& candidate) {
  PositionAutomaton pos(candidate);
  for (const auto& p : problem.positives)
    if (!pos.matches(p)) return false;
  PositionAutomaton neg(Regex::concat(Regex::concat(problem.prefix, candidate), problem.suffix));
  for (const auto& n : problem.negatives)
    if (neg.matches(n)) return false;
  return true;
}

}  // namespace rxsynth
