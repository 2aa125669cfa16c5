#include "rxsynth/matcher.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "rxsynth/error.hpp"

namespace rxsynth {

namespace {

std::size_t count_positions(const Regex& r, HoleMode holes) {
  switch (r.kind()) {
    case RegexKind::Literal:
    case RegexKind::Wildcard:
      return 1;
    case RegexKind::Hole:
      if (holes == HoleMode::Reject) throw IncompleteRegexError("cannot match a regex that contains holes");
      return holes == HoleMode::Universal ? 1 : 0;
    case RegexKind::Union:
    case RegexKind::Concat:
      return count_positions(r.left(), holes) + count_positions(r.right(), holes);
    case RegexKind::Star:
    case RegexKind::Question:
      return count_positions(r.inner(), holes);
    default:
      return 0;
  }
}

// Position sets are spans of `words` 64-bit words inside a scratch arena.
struct Glushkov {
  bool nullable;
  std::size_t first;  // arena offset
  std::size_t last;   // arena offset
};

}  // namespace

class PositionBuilder {
 public:
  PositionBuilder(PositionAutomaton& a, HoleMode holes, std::size_t n) : a_(a), holes_(holes) {
    a_.words_ = n == 0 ? 1 : (n + 63) / 64;
    a_.symbols_.reserve(n);
    a_.follow_.assign(n * a_.words_, 0);
  }

  void run(const Regex& r) {
    Glushkov g = build(r);
    a_.nullable_ = g.nullable;
    a_.first_.assign(arena_.begin() + static_cast<std::ptrdiff_t>(g.first),
                     arena_.begin() + static_cast<std::ptrdiff_t>(g.first + a_.words_));
    a_.last_.assign(arena_.begin() + static_cast<std::ptrdiff_t>(g.last),
                    arena_.begin() + static_cast<std::ptrdiff_t>(g.last + a_.words_));
    build_allow_masks();
  }

 private:
  PositionAutomaton& a_;
  HoleMode holes_;
  std::vector<std::uint64_t> arena_;

  std::size_t alloc() {
    std::size_t off = arena_.size();
    arena_.resize(off + a_.words_, 0);
    return off;
  }

  std::size_t alloc_union(std::size_t x, std::size_t y) {
    std::size_t off = alloc();
    for (std::size_t w = 0; w < a_.words_; ++w) arena_[off + w] = arena_[x + w] | arena_[y + w];
    return off;
  }

  std::size_t add_position(char symbol) {
    std::size_t p = a_.symbols_.size();
    a_.symbols_.push_back(symbol);
    std::size_t off = alloc();
    arena_[off + (p >> 6)] |= std::uint64_t{1} << (p & 63);
    return off;
  }

  // follow(p) |= set, for every p in `from`
  void link(std::size_t from, std::size_t set) {
    for (std::size_t w = 0; w < a_.words_; ++w) {
      std::uint64_t bits = arena_[from + w];
      while (bits) {
        std::size_t p = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        std::uint64_t* dst = a_.follow_.data() + p * a_.words_;
        for (std::size_t v = 0; v < a_.words_; ++v) dst[v] |= arena_[set + v];
      }
    }
  }

  Glushkov build(const Regex& r) {
    switch (r.kind()) {
      case RegexKind::Empty: {
        std::size_t e = alloc();
        return {false, e, e};
      }
      case RegexKind::Epsilon: {
        std::size_t e = alloc();
        return {true, e, e};
      }
      case RegexKind::Literal: {
        std::size_t s = add_position(r.symbol());
        return {false, s, s};
      }
      case RegexKind::Wildcard: {
        std::size_t s = add_position('\0');
        return {false, s, s};
      }
      case RegexKind::Hole: {
        if (holes_ == HoleMode::Empty) {
          std::size_t e = alloc();
          return {false, e, e};
        }
        std::size_t s = add_position('\0');
        link(s, s);
        return {true, s, s};
      }
      case RegexKind::Union: {
        Glushkov x = build(r.left());
        Glushkov y = build(r.right());
        return {x.nullable || y.nullable, alloc_union(x.first, y.first), alloc_union(x.last, y.last)};
      }
      case RegexKind::Concat: {
        Glushkov x = build(r.left());
        Glushkov y = build(r.right());
        link(x.last, y.first);
        std::size_t first = x.nullable ? alloc_union(x.first, y.first) : x.first;
        std::size_t last = y.nullable ? alloc_union(x.last, y.last) : y.last;
        return {x.nullable && y.nullable, first, last};
      }
      case RegexKind::Star: {
        Glushkov x = build(r.inner());
        link(x.last, x.first);
        return {true, x.first, x.last};
      }
      case RegexKind::Question: {
        Glushkov x = build(r.inner());
        return {true, x.first, x.last};
      }
    }
    return {false, 0, 0};
  }

  void build_allow_masks() {
    const std::size_t words = a_.words_;
    a_.allow_.assign(words, 0);
    for (std::size_t p = 0; p < a_.symbols_.size(); ++p) {
      char c = a_.symbols_[p];
      std::size_t slot = 0;
      if (c != '\0') {
        auto& s = a_.slot_of_[static_cast<unsigned char>(c)];
        if (s == 0) {
          // symbols are printable ASCII, so at most 94 slots
          a_.allow_.resize(a_.allow_.size() + words, 0);
          s = static_cast<std::uint8_t>(a_.allow_.size() / words - 1);
        }
        slot = s;
      }
      a_.allow_[slot * words + (p >> 6)] |= std::uint64_t{1} << (p & 63);
    }
    // fold the wildcard mask into every symbol slot
    for (std::size_t slot = 1; slot * words < a_.allow_.size(); ++slot) {
      for (std::size_t w = 0; w < words; ++w) a_.allow_[slot * words + w] |= a_.allow_[w];
    }
  }
};

PositionAutomaton::PositionAutomaton(const Regex& r, HoleMode holes) {
  std::size_t n = count_positions(r, holes);
  PositionBuilder(*this, holes, n).run(r);
}

bool PositionAutomaton::matches(std::string_view s, MatchStats* stats) const {
  if (s.empty()) return nullable_;
  return words_ == 1 ? matches_small(s, stats) : matches_large(s, stats);
}

bool PositionAutomaton::matches_small(std::string_view s, MatchStats* stats) const {
  auto allow = [this](char c) { return allow_[slot_of_[static_cast<unsigned char>(c)]]; };
  std::uint64_t cur = first_[0] & allow(s[0]);
  std::size_t steps = 0;
  for (std::size_t i = 1; i < s.size() && cur; ++i) {
    std::uint64_t next = 0;
    std::uint64_t bits = cur;
    while (bits) {
      next |= follow_[static_cast<std::size_t>(std::countr_zero(bits))];
      bits &= bits - 1;
      ++steps;
    }
    cur = next & allow(s[i]);
  }
  if (stats) stats->steps += steps;
  return (cur & last_[0]) != 0;
}

bool PositionAutomaton::matches_large(std::string_view s, MatchStats* stats) const {
  const std::size_t words = words_;
  std::vector<std::uint64_t> cur(words), next(words);
  auto allow = [this, words](char c) { return allow_.data() + slot_of_[static_cast<unsigned char>(c)] * words; };
  const std::uint64_t* a0 = allow(s[0]);
  bool any = false;
  for (std::size_t w = 0; w < words; ++w) {
    cur[w] = first_[w] & a0[w];
    any |= cur[w] != 0;
  }
  std::size_t steps = 0;
  for (std::size_t i = 1; i < s.size() && any; ++i) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = cur[w];
      while (bits) {
        std::size_t p = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::uint64_t* f = follow_.data() + p * words;
        for (std::size_t v = 0; v < words; ++v) next[v] |= f[v];
        ++steps;
      }
    }
    const std::uint64_t* a = allow(s[i]);
    any = false;
    for (std::size_t w = 0; w < words; ++w) {
      cur[w] = next[w] & a[w];
      any |= cur[w] != 0;
    }
  }
  if (stats) stats->steps += steps;
  if (!any) return false;
  for (std::size_t w = 0; w < words; ++w) {
    if (cur[w] & last_[w]) return true;
  }
  return false;
}

bool matches(const Regex& r, std::string_view s) { return PositionAutomaton(r).matches(s); }

bool matches_all(const PositionAutomaton& a, const std::vector<std::string>& strings) {
  for (const auto& s : strings) {
    if (!a.matches(s)) return false;
  }
  return true;
}

bool matches_any(const PositionAutomaton& a, const std::vector<std::string>& strings) {
  for (const auto& s : strings) {
    if (a.matches(s)) return true;
  }
  return false;
}

namespace {

// t[i * (n + 1) + j] is set when the subexpression derives s[i, j).
std::vector<char> interval_table(const Regex& r, std::string_view s) {
  const std::size_t n = s.size(), w = n + 1;
  std::vector<char> t(w * w, 0);
  auto at = [w](std::vector<char>& v, std::size_t i, std::size_t j) -> char& { return v[i * w + j]; };
  switch (r.kind()) {
    case RegexKind::Empty:
      break;
    case RegexKind::Hole:
      throw IncompleteRegexError("cannot match a template");
    case RegexKind::Epsilon:
      for (std::size_t i = 0; i <= n; ++i) at(t, i, i) = 1;
      break;
    case RegexKind::Literal:
      for (std::size_t i = 0; i < n; ++i) at(t, i, i + 1) = s[i] == r.symbol();
      break;
    case RegexKind::Wildcard:
      for (std::size_t i = 0; i < n; ++i) at(t, i, i + 1) = 1;
      break;
    case RegexKind::Union: {
      auto a = interval_table(r.left(), s), b = interval_table(r.right(), s);
      for (std::size_t k = 0; k < t.size(); ++k) t[k] = a[k] || b[k];
      break;
    }
    case RegexKind::Concat: {
      auto a = interval_table(r.left(), s), b = interval_table(r.right(), s);
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t m = i; m <= n; ++m)
          if (at(a, i, m))
            for (std::size_t j = m; j <= n; ++j)
              if (at(b, m, j)) at(t, i, j) = 1;
      break;
    }
    case RegexKind::Question: {
      t = interval_table(r.inner(), s);
      for (std::size_t i = 0; i <= n; ++i) at(t, i, i) = 1;
      break;
    }
    case RegexKind::Star: {
      auto a = interval_table(r.inner(), s);
      // reachability from i by chaining nonempty pieces, shortest spans first
      for (std::size_t i = 0; i <= n; ++i) at(t, i, i) = 1;
      for (std::size_t len = 1; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i) {
          const std::size_t j = i + len;
          for (std::size_t m = i + 1; m <= j && !at(t, i, j); ++m)
            if (at(a, i, m) && at(t, m, j)) at(t, i, j) = 1;
        }
      break;
    }
  }
  return t;
}

}  // namespace

bool matches_by_intervals(const Regex& r, std::string_view s) { return interval_table(r, s)[s.size()] != 0; }

}  // namespace rxsynth
