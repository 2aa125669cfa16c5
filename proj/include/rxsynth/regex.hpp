#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rxsynth/alphabet.hpp"

namespace rxsynth {

enum class RegexKind : std::uint8_t {
  Empty,     // the empty language
  Epsilon,   // {λ}
  Literal,
  Wildcard,  // any single alphabet symbol
  Union,
  Concat,
  Star,
  Question,
  Hole,      // search placeholder; a regex with holes is a template
};

/// Immutable regex AST with shared structure.
///
/// Copies are cheap (one shared pointer). Equality is structural; hole ids
/// take part in the comparison.
class Regex {
 public:
  /// Default-constructed value is Empty.
  Regex();

  static Regex empty();
  static Regex epsilon();
  static Regex literal(char symbol);
  static Regex wildcard();
  static Regex alt(Regex left, Regex right);
  static Regex concat(Regex left, Regex right);
  static Regex star(Regex inner);
  static Regex question(Regex inner);
  static Regex hole(int id);

  /// Concatenation of the symbols of `word`; Epsilon for the empty word.
  static Regex word(std::string_view word);
  /// Left-nested concatenation of `parts`; Epsilon when `parts` is empty.
  static Regex concat_all(const std::vector<Regex>& parts);

  RegexKind kind() const;
  char symbol() const;
  int hole_id() const;

  /// Left operand of Union/Concat.
  const Regex& left() const;
  /// Right operand of Union/Concat.
  const Regex& right() const;
  /// Operand of Star/Question.
  const Regex& inner() const;

  /// Number of AST nodes.
  std::size_t size() const;
  std::size_t hole_count() const;
  bool complete() const { return hole_count() == 0; }

  bool is(RegexKind k) const { return kind() == k; }
  bool same_node(const Regex& other) const { return node_ == other.node_; }

  friend bool operator==(const Regex& a, const Regex& b);
  friend bool operator!=(const Regex& a, const Regex& b) { return !(a == b); }

 private:
  struct Node;
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Regex null() { return Regex(std::shared_ptr<const Node>()); }

  std::shared_ptr<const Node> node_;
};

/// Parses the toolkit syntax: alphabet symbols, `.`, `+` or `|` for union,
/// juxtaposition for concatenation, postfix `*` and `?`, parentheses,
/// `@epsilon`, `@empty`, and `#<n>` for holes.
///
/// Precedence is postfix > concatenation > union; binary operators nest to
/// the left. Throws SyntaxError (with position) or AlphabetError.
Regex parse(std::string_view text, const Alphabet& alphabet);

/// Canonical printing with minimal parentheses; `parse(to_text(r))` is
/// structurally equal to `r`. Union prints as `+`.
std::string to_text(const Regex& r);

/// Number of AST nodes.
inline std::size_t size(const Regex& r) { return r.size(); }

/// Language-preserving rewrites applied to a fixpoint. Holes are opaque.
Regex simplify(const Regex& r);

/// Flattens the top-level concatenation spine, left to right.
std::vector<Regex> concat_spine(const Regex& r);

/// Distinct literal symbols in the order they first occur.
std::string literal_symbols(const Regex& r);

}  // namespace rxsynth
