#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rxsynth/alphabet.hpp"
#include "rxsynth/regex.hpp"

namespace rxsynth {

/// Positive and negative strings over one alphabet. Both lists are
/// duplicate-free and keep generation order.
struct ExamplePair {
  Alphabet alphabet;
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
};

/// Labels are '0' for wildcard-generated symbols, then '1'..'9', 'a'..'z'.
inline constexpr int kMaxParts = 35;

char label_char(int part);
/// Inverse of label_char; -1 for characters outside the label set.
int label_value(char c);

struct SplitLabeling {
  std::string string;
  std::string labels;

  friend bool operator==(const SplitLabeling&, const SplitLabeling&) = default;
};

/// Checks |labels| == |string|, the label alphabet, contiguity of every
/// nonzero label and increasing run order. Throws LabelingError.
void validate_labeling(const SplitLabeling& labeling);

/// Largest label value in the labeling (0 if all zero).
int max_label(const SplitLabeling& labeling);

/// Random strings of L(r) with length <= max_len, distinct, in the order they
/// were drawn. Throws GenerationError(InsufficientLanguage) if the language
/// has fewer than `count` such strings.
std::vector<std::string> gen_positives(const Regex& r, const Alphabet& alphabet, int count, int max_len,
                                       std::uint64_t seed);

/// Non-members of L(r) made by substituting 1..ceil(|s|/2) positions of
/// random positives. Throws GenerationError(BudgetExhausted).
std::vector<std::string> gen_negatives_symbol_perturb(const Regex& r, const Alphabet& alphabet,
                                                      const std::vector<std::string>& positives, int count,
                                                      std::uint64_t seed);

enum class RegexEdit { SubstituteLiteral, InsertSubtree, DeleteSubtree };

/// One random edit of `r`; nullopt when the edit does not apply (no literal
/// to substitute, or a one-symbol alphabet).
std::optional<Regex> perturb_regex(const Regex& r, const Alphabet& alphabet, RegexEdit edit, std::uint64_t seed);

/// Non-members of L(r) sampled from randomly edited copies of r.
/// Throws GenerationError(BudgetExhausted).
std::vector<std::string> gen_negatives_regex_perturb(const Regex& r, const Alphabet& alphabet, int count,
                                                     int max_len, std::uint64_t seed);

/// The subregexes a labeling refers to: the top-level concatenation spine,
/// with everything from the 35th non-wildcard element on folded into one
/// element.
std::vector<Regex> split_parts(const Regex& r);

/// True for `.*`; such parts are labeled 0. A bare `.` or `.?` part is
/// numbered like any other, since a `.*` slot would widen its language.
bool wildcard_rooted(const Regex& r);

/// Splits `s` along split_parts(r), preferring longer matches for earlier
/// parts. Throws LabelingError(NoPartition) if `s` is not in L(r).
SplitLabeling ground_truth_labels(const Regex& r, const std::string& s);

struct RawRegexRecord {
  std::string source_text;
  std::optional<Regex> regex;
  Alphabet alphabet;
  std::string rejection;  // empty unless regex is absent
  std::map<char, std::string> substitution_table;
  bool widened = false;  // a counted quantifier was replaced by `*`
};

/// Converts a practical regex into toolkit syntax over an induced alphabet.
/// Rejections (backreference, lookaround, negated-class, unparseable,
/// too-many-reserved-symbols) are reported in the record.
RawRegexRecord preprocess_raw(std::string_view source_text);

}  // namespace rxsynth
