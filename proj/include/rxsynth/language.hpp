#pragma once

#include <set>
#include <string>

#include "rxsynth/alphabet.hpp"
#include "rxsynth/regex.hpp"

namespace rxsynth {

/// Finite slice of a regular language: every member of length <= max_len.
struct Language {
  std::set<std::string> strings;
  int max_len = 0;

  bool contains(const std::string& s) const { return strings.count(s) != 0; }
  friend bool operator==(const Language&, const Language&) = default;
};

inline constexpr int kMaxEnumerationLength = 12;

/// Brute force: generates every string over `alphabet` of length <= max_len
/// and keeps the ones `r` matches. Meant as a test oracle.
///
/// Throws BoundExceededError when max_len is outside 0..12 and
/// IncompleteRegexError for templates.
Language enumerate_language(const Regex& r, const Alphabet& alphabet, int max_len);

}  // namespace rxsynth
