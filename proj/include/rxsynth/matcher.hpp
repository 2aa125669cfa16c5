#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rxsynth/regex.hpp"

namespace rxsynth {

/// How Hole leaves are read when compiling a template.
enum class HoleMode : std::uint8_t {
  Reject,     // holes are an error (IncompleteRegexError)
  Universal,  // hole reads as `.*`: the largest language any completion can have
  Empty,      // hole reads as `@empty`: the smallest language any completion can have
};

struct MatchStats {
  std::size_t steps = 0;  // follow-set unions performed
};

/// Nondeterministic position automaton compiled from a regex, simulated with
/// bitsets over the set of active positions.
///
/// Each literal, wildcard (and universal hole) leaf is one position; there
/// are no epsilon transitions, so a run costs O(|s| * positions) word
/// operations and never backtracks. Matching is full-string.
class PositionAutomaton {
 public:
  explicit PositionAutomaton(const Regex& r, HoleMode holes = HoleMode::Reject);

  bool matches(std::string_view s, MatchStats* stats = nullptr) const;

  std::size_t positions() const { return symbols_.size(); }
  bool nullable() const { return nullable_; }

  /// Symbol read at position `p`; '\0' for wildcard positions.
  char position_symbol(std::size_t p) const { return symbols_[p]; }
  bool first_contains(std::size_t p) const { return test(first_.data(), p); }
  bool last_contains(std::size_t p) const { return test(last_.data(), p); }
  bool follow_contains(std::size_t from, std::size_t to) const { return test(follow_.data() + from * words_, to); }

 private:
  std::size_t words_ = 1;
  bool nullable_ = false;
  std::vector<char> symbols_;
  std::vector<std::uint64_t> first_;
  std::vector<std::uint64_t> last_;
  std::vector<std::uint64_t> follow_;  // positions x words_

  // allow-masks: index 0 is wildcard positions, slot k>0 adds positions of
  // one literal symbol.
  std::vector<std::uint64_t> allow_;
  std::uint8_t slot_of_[256] = {};

  static bool test(const std::uint64_t* set, std::size_t p) { return (set[p >> 6] >> (p & 63)) & 1U; }

  bool matches_small(std::string_view s, MatchStats* stats) const;
  bool matches_large(std::string_view s, MatchStats* stats) const;

  friend class PositionBuilder;
};

/// Full-string membership. Throws IncompleteRegexError if `r` has holes.
bool matches(const Regex& r, std::string_view s);

/// True iff every string of `strings` is matched.
bool matches_all(const PositionAutomaton& a, const std::vector<std::string>& strings);
/// True iff some string of `strings` is matched.
bool matches_any(const PositionAutomaton& a, const std::vector<std::string>& strings);

/// Membership by interval dynamic programming over the AST: which substrings
/// s[i, j) each subexpression derives. Cubic in |s| and shares no code with
/// PositionAutomaton, so it serves as an independent cross-check.
bool matches_by_intervals(const Regex& r, std::string_view s);

}  // namespace rxsynth
