#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rxsynth/alphabet.hpp"
#include "rxsynth/random.hpp"
#include "rxsynth/regex.hpp"

namespace rxsynth {

/// Deterministic automaton over an Alphabet. Missing transitions go to an
/// implicit rejecting sink.
class Dfa {
 public:
  static constexpr int kNone = -1;

  Dfa() = default;
  explicit Dfa(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return accepting_.size(); }
  int start() const { return start_; }
  void set_start(int s) { start_ = s; }

  int add_state(bool accepting);
  bool accepting(int state) const { return accepting_[static_cast<std::size_t>(state)]; }
  void set_accepting(int state, bool value) { accepting_[static_cast<std::size_t>(state)] = value; }

  /// Target of (state, symbol index), or kNone.
  int next(int state, std::size_t symbol) const { return next_[static_cast<std::size_t>(state) * width() + symbol]; }
  void set_next(int state, std::size_t symbol, int target) {
    next_[static_cast<std::size_t>(state) * width() + symbol] = target;
  }

  bool accepts(std::string_view s) const;

 private:
  Alphabet alphabet_;
  int start_ = 0;
  std::vector<int> next_;
  std::vector<bool> accepting_;

  std::size_t width() const { return alphabet_.size(); }
};

/// Subset construction over the position automaton of a complete regex.
Dfa compile_dfa(const Regex& r, const Alphabet& alphabet);

/// Same language with every transition defined (adds a sink if needed).
Dfa complete(const Dfa& d);

/// Accepts exactly the strings over the alphabet that `d` rejects.
Dfa complement(const Dfa& d);

/// Shortest (then lexicographically least) string accepted by exactly one of
/// the two automata, found by breadth-first search of the product; nullopt
/// when the languages are equal. Both must share an alphabet.
std::optional<std::string> find_difference(const Dfa& a, const Dfa& b);

inline bool equivalent(const Dfa& a, const Dfa& b) { return !find_difference(a, b).has_value(); }

/// Number of accepted strings of length <= max_len, as a double (exact below
/// 2^53).
double count_accepted(const Dfa& d, int max_len);

/// Uniformly random accepted string of length <= max_len; nullopt when there
/// is none.
std::optional<std::string> sample_accepted(const Dfa& d, int max_len, Rng& rng);

/// Debug export: `start: q`, `accept: q...`, then one `src symbol dst` line
/// per transition.
std::string to_text(const Dfa& d);

}  // namespace rxsynth
