#include "rxsynth/examples.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "rxsynth/automaton.hpp"
#include "rxsynth/error.hpp"
#include "rxsynth/matcher.hpp"
#include "rxsynth/random.hpp"

namespace rxsynth {

char label_char(int part) {
  if (part < 0 || part > kMaxParts) throw LabelingError(LabelingError::Kind::TooManyParts, "label out of range");
  return part < 10 ? static_cast<char>('0' + part) : static_cast<char>('a' + part - 10);
}

int label_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

void validate_labeling(const SplitLabeling& labeling) {
  if (labeling.labels.size() != labeling.string.size())
    throw LabelingError(LabelingError::Kind::InconsistentLength,
                        "labels '" + labeling.labels + "' do not fit string '" + labeling.string + "'");
  int last = 0;
  char prev = '\0';
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    char c = labeling.labels[i];
    int v = label_value(c);
    if (v < 0) throw LabelingError(LabelingError::Kind::InvalidLabeling, std::string("bad label character '") + c + "'");
    if (v != 0 && c != prev) {
      // start of a new nonzero run
      if (v <= last)
        throw LabelingError(LabelingError::Kind::InvalidLabeling,
                            "labels '" + labeling.labels + "' are not contiguous increasing runs");
      last = v;
    }
    prev = c;
  }
}

int max_label(const SplitLabeling& labeling) {
  int m = 0;
  for (char c : labeling.labels) m = std::max(m, label_value(c));
  return m;
}

namespace {

// Random walk over the AST. Returns false if the walk ran out of length
// budget or hit an empty language.
class Walker {
 public:
  Walker(const Alphabet& alphabet, Rng& rng) : alphabet_(alphabet), rng_(rng) {}

  std::optional<std::string> sample(const Regex& r, int max_len) {
    std::string out;
    if (!walk(r, out, static_cast<std::size_t>(max_len))) return std::nullopt;
    return out;
  }

 private:
  const Alphabet& alphabet_;
  Rng& rng_;

  bool walk(const Regex& r, std::string& out, std::size_t limit) {
    switch (r.kind()) {
      case RegexKind::Empty:
      case RegexKind::Hole:
        return false;
      case RegexKind::Epsilon:
        return true;
      case RegexKind::Literal:
        if (out.size() >= limit) return false;
        out.push_back(r.symbol());
        return true;
      case RegexKind::Wildcard:
        if (out.size() >= limit) return false;
        out.push_back(alphabet_.at(uniform_index(rng_, alphabet_.size())));
        return true;
      case RegexKind::Union:
        return walk(coin(rng_) ? r.left() : r.right(), out, limit);
      case RegexKind::Concat:
        return walk(r.left(), out, limit) && walk(r.right(), out, limit);
      case RegexKind::Question:
        return coin(rng_) ? walk(r.inner(), out, limit) : true;
      case RegexKind::Star: {
        // geometric repetition count (p = 1/2); an iteration that would
        // overrun the budget ends the loop instead of failing the walk
        while (coin(rng_)) {
          std::size_t mark = out.size();
          if (!walk(r.inner(), out, limit)) {
            out.resize(mark);
            break;
          }
        }
        return true;
      }
    }
    return false;
  }
};

void collect_nodes(const Regex& r, std::vector<Regex>& out) {
  out.push_back(r);
  switch (r.kind()) {
    case RegexKind::Union:
    case RegexKind::Concat:
      collect_nodes(r.left(), out);
      collect_nodes(r.right(), out);
      break;
    case RegexKind::Star:
    case RegexKind::Question:
      collect_nodes(r.inner(), out);
      break;
    default:
      break;
  }
}

// Rebuilds r with its `target`-th node in preorder replaced by edit(node).
Regex replace_node(const Regex& r, std::size_t target, std::size_t& counter,
                   const std::function<Regex(const Regex&)>& edit) {
  if (counter++ == target) return edit(r);
  switch (r.kind()) {
    case RegexKind::Union:
    case RegexKind::Concat: {
      Regex a = replace_node(r.left(), target, counter, edit);
      Regex b = replace_node(r.right(), target, counter, edit);
      return r.is(RegexKind::Union) ? Regex::alt(a, b) : Regex::concat(a, b);
    }
    case RegexKind::Star:
      return Regex::star(replace_node(r.inner(), target, counter, edit));
    case RegexKind::Question:
      return Regex::question(replace_node(r.inner(), target, counter, edit));
    default:
      return r;
  }
}

Regex replace_at(const Regex& r, std::size_t target, const std::function<Regex(const Regex&)>& edit) {
  std::size_t counter = 0;
  return replace_node(r, target, counter, edit);
}

}  // namespace

std::vector<std::string> gen_positives(const Regex& r, const Alphabet& alphabet, int count, int max_len,
                                       std::uint64_t seed) {
  if (!r.complete()) throw IncompleteRegexError("cannot sample from a template");
  Rng rng(seed);
  Walker walker(alphabet, rng);
  std::vector<std::string> out;
  std::set<std::string> seen;
  const int attempts = 50 * count + 200;
  for (int i = 0; i < attempts && static_cast<int>(out.size()) < count; ++i) {
    auto s = walker.sample(r, max_len);
    if (s && seen.insert(*s).second) out.push_back(*s);
  }
  if (static_cast<int>(out.size()) >= count) return out;

  // The walk is biased towards short strings. Decide on the exact language
  // size, then top up with uniform draws from the automaton.
  Dfa d = compile_dfa(r, alphabet);
  if (count_accepted(d, max_len) < count)
    throw GenerationError(GenerationError::Kind::InsufficientLanguage,
                          to_text(r) + " has fewer than " + std::to_string(count) + " strings up to length " +
                              std::to_string(max_len));
  for (int i = 0; i < 1000 * count && static_cast<int>(out.size()) < count; ++i) {
    auto s = sample_accepted(d, max_len, rng);
    if (s && seen.insert(*s).second) out.push_back(*s);
  }
  if (static_cast<int>(out.size()) < count)
    throw GenerationError(GenerationError::Kind::BudgetExhausted, "could not draw enough distinct positives");
  return out;
}

std::vector<std::string> gen_negatives_symbol_perturb(const Regex& r, const Alphabet& alphabet,
                                                      const std::vector<std::string>& positives, int count,
                                                      std::uint64_t seed) {
  PositionAutomaton pa(r);
  Rng rng(seed);
  std::set<std::string> seen(positives.begin(), positives.end());
  std::vector<std::string> sources;
  for (const auto& p : positives)
    if (!p.empty()) sources.push_back(p);

  std::vector<std::string> out;
  const int attempts = 200 * count + 1000;
  if (!sources.empty() && alphabet.size() > 1) {
    for (int i = 0; i < attempts && static_cast<int>(out.size()) < count; ++i) {
      std::string s = sources[uniform_index(rng, sources.size())];
      std::size_t k = 1 + uniform_index(rng, (s.size() + 1) / 2);
      std::vector<std::size_t> where(s.size());
      for (std::size_t j = 0; j < where.size(); ++j) where[j] = j;
      for (std::size_t j = 0; j < k; ++j) {
        std::swap(where[j], where[j + uniform_index(rng, where.size() - j)]);
        char& c = s[where[j]];
        std::size_t pick = uniform_index(rng, alphabet.size() - 1);
        if (static_cast<int>(pick) >= alphabet.index_of(c)) ++pick;
        c = alphabet.at(pick);
      }
      if (!pa.matches(s) && seen.insert(s).second) out.push_back(s);
    }
  }
  if (static_cast<int>(out.size()) < count)
    throw GenerationError(GenerationError::Kind::BudgetExhausted,
                          "found " + std::to_string(out.size()) + " of " + std::to_string(count) +
                              " perturbed negatives for " + to_text(r));
  return out;
}

std::optional<Regex> perturb_regex(const Regex& r, const Alphabet& alphabet, RegexEdit edit, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Regex> nodes;
  collect_nodes(r, nodes);
  switch (edit) {
    case RegexEdit::SubstituteLiteral: {
      std::vector<std::size_t> literals;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].is(RegexKind::Literal)) literals.push_back(i);
      if (literals.empty() || alphabet.size() < 2) return std::nullopt;
      std::size_t at = literals[uniform_index(rng, literals.size())];
      char old = nodes[at].symbol();
      std::size_t pick = uniform_index(rng, alphabet.size() - 1);
      if (alphabet.index_of(old) >= 0 && static_cast<int>(pick) >= alphabet.index_of(old)) ++pick;
      char sym = alphabet.at(pick);
      return replace_at(r, at, [sym](const Regex&) { return Regex::literal(sym); });
    }
    case RegexEdit::InsertSubtree: {
      Regex piece = nodes[uniform_index(rng, nodes.size())];
      std::size_t at = uniform_index(rng, nodes.size());
      bool before = coin(rng);
      return replace_at(r, at, [&](const Regex& n) {
        return before ? Regex::concat(piece, n) : Regex::concat(n, piece);
      });
    }
    case RegexEdit::DeleteSubtree: {
      std::size_t at = uniform_index(rng, nodes.size());
      return simplify(replace_at(r, at, [](const Regex&) { return Regex::epsilon(); }));
    }
  }
  return std::nullopt;
}

std::vector<std::string> gen_negatives_regex_perturb(const Regex& r, const Alphabet& alphabet, int count,
                                                     int max_len, std::uint64_t seed) {
  PositionAutomaton pa(r);
  Rng rng(seed);
  Walker walker(alphabet, rng);
  std::set<std::string> seen;
  std::vector<std::string> out;
  const int edits = 50 * count + 200;
  constexpr int kSamplesPerEdit = 8;
  for (int i = 0; i < edits && static_cast<int>(out.size()) < count; ++i) {
    auto edit = static_cast<RegexEdit>(uniform_index(rng, 3));
    auto variant = perturb_regex(r, alphabet, edit, rng());
    if (!variant) continue;
    for (int j = 0; j < kSamplesPerEdit && static_cast<int>(out.size()) < count; ++j) {
      auto s = walker.sample(*variant, max_len);
      if (s && !pa.matches(*s) && seen.insert(*s).second) out.push_back(*s);
    }
  }
  if (static_cast<int>(out.size()) < count)
    throw GenerationError(GenerationError::Kind::BudgetExhausted,
                          "found " + std::to_string(out.size()) + " of " + std::to_string(count) +
                              " regex-perturbed negatives for " + to_text(r));
  return out;
}

bool wildcard_rooted(const Regex& r) { return r.is(RegexKind::Star) && r.inner().is(RegexKind::Wildcard); }

std::vector<Regex> split_parts(const Regex& r) {
  std::vector<Regex> spine = concat_spine(r);
  std::vector<Regex> out;
  int numbered = 0;
  std::size_t i = 0;
  for (; i < spine.size(); ++i) {
    if (!wildcard_rooted(spine[i]) && ++numbered == kMaxParts) break;
    out.push_back(spine[i]);
  }
  if (i < spine.size()) {
    std::vector<Regex> tail(spine.begin() + static_cast<std::ptrdiff_t>(i), spine.end());
    out.push_back(Regex::concat_all(tail));
  }
  return out;
}

SplitLabeling ground_truth_labels(const Regex& r, const std::string& s) {
  std::vector<Regex> parts = split_parts(r);
  const std::size_t n = s.size(), k = parts.size();
  std::vector<PositionAutomaton> automata;
  automata.reserve(k);
  for (const auto& p : parts) automata.emplace_back(p);

  // fits[i][a][b]: parts[i] matches s[a, b)
  std::vector<std::vector<std::vector<bool>>> fits(k, std::vector<std::vector<bool>>(n + 1, std::vector<bool>(n + 1)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t a = 0; a <= n; ++a)
      for (std::size_t b = a; b <= n; ++b) fits[i][a][b] = automata[i].matches(std::string_view(s).substr(a, b - a));

  // done[i][a]: parts i.. can cover s[a, n)
  std::vector<std::vector<bool>> done(k + 1, std::vector<bool>(n + 1, false));
  done[k][n] = true;
  for (std::size_t i = k; i-- > 0;)
    for (std::size_t a = 0; a <= n; ++a)
      for (std::size_t b = a; b <= n && !done[i][a]; ++b) done[i][a] = fits[i][a][b] && done[i + 1][b];
  if (!done[0][0])
    throw LabelingError(LabelingError::Kind::NoPartition, "'" + s + "' is not in L(" + to_text(r) + ")");

  SplitLabeling out{s, std::string(n, '0')};
  std::size_t pos = 0;
  int label = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t end = n + 1;
    for (std::size_t b = n + 1; b-- > pos;) {
      if (fits[i][pos][b] && done[i + 1][b]) {
        end = b;
        break;
      }
    }
    char c = '0';
    if (!wildcard_rooted(parts[i])) c = label_char(++label);
    std::fill(out.labels.begin() + static_cast<std::ptrdiff_t>(pos), out.labels.begin() + static_cast<std::ptrdiff_t>(end), c);
    pos = end;
  }
  return out;
}

}  // namespace rxsynth
