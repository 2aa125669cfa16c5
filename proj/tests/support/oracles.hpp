#pragma once

// Test-only oracles. Nothing here goes through the position automaton, the
// search engine, or the subset construction it checks.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rxsynth/alphabet.hpp"
#include "rxsynth/random.hpp"
#include "rxsynth/regex.hpp"

namespace oracle {

using rxsynth::Alphabet;
using rxsynth::Regex;
using rxsynth::RegexKind;

/// L(r) restricted to strings of length <= k, computed by recursive set
/// semantics.
inline std::set<std::string> language_upto(const Regex& r, const Alphabet& sigma, std::size_t k) {
  switch (r.kind()) {
    case RegexKind::Empty:
    case RegexKind::Hole:
      return {};
    case RegexKind::Epsilon:
      return {""};
    case RegexKind::Literal:
      return k >= 1 ? std::set<std::string>{std::string(1, r.symbol())} : std::set<std::string>{};
    case RegexKind::Wildcard: {
      std::set<std::string> out;
      if (k >= 1) {
        for (char c : sigma.symbols()) out.insert(std::string(1, c));
      }
      return out;
    }
    case RegexKind::Union: {
      auto a = language_upto(r.left(), sigma, k);
      auto b = language_upto(r.right(), sigma, k);
      a.insert(b.begin(), b.end());
      return a;
    }
    case RegexKind::Concat: {
      auto a = language_upto(r.left(), sigma, k);
      auto b = language_upto(r.right(), sigma, k);
      std::set<std::string> out;
      for (const auto& x : a) {
        for (const auto& y : b) {
          if (x.size() + y.size() <= k) out.insert(x + y);
        }
      }
      return out;
    }
    case RegexKind::Question: {
      auto a = language_upto(r.inner(), sigma, k);
      a.insert("");
      return a;
    }
    case RegexKind::Star: {
      auto base = language_upto(r.inner(), sigma, k);
      std::set<std::string> out{""};
      std::set<std::string> frontier{""};
      while (!frontier.empty()) {
        std::set<std::string> next;
        for (const auto& x : frontier) {
          for (const auto& y : base) {
            if (y.empty() || x.size() + y.size() > k) continue;
            std::string z = x + y;
            if (out.insert(z).second) next.insert(z);
          }
        }
        frontier = std::move(next);
      }
      return out;
    }
  }
  return {};
}

/// Membership by interval dynamic programming: can r derive s[i, j)?
class IntervalMatcher {
 public:
  IntervalMatcher(const Regex& r, const std::string& s) : s_(s) { root_ = table(r); }
  bool full() const { return root_[0][s_.size()]; }

 private:
  using Table = std::vector<std::vector<bool>>;
  const std::string& s_;
  Table root_;

  Table table(const Regex& r) {
    const std::size_t n = s_.size();
    Table t(n + 1, std::vector<bool>(n + 1, false));
    switch (r.kind()) {
      case RegexKind::Empty:
      case RegexKind::Hole:
        break;
      case RegexKind::Epsilon:
        for (std::size_t i = 0; i <= n; ++i) t[i][i] = true;
        break;
      case RegexKind::Literal:
        for (std::size_t i = 0; i < n; ++i) t[i][i + 1] = s_[i] == r.symbol();
        break;
      case RegexKind::Wildcard:
        for (std::size_t i = 0; i < n; ++i) t[i][i + 1] = true;
        break;
      case RegexKind::Union: {
        Table a = table(r.left()), b = table(r.right());
        for (std::size_t i = 0; i <= n; ++i)
          for (std::size_t j = i; j <= n; ++j) t[i][j] = a[i][j] || b[i][j];
        break;
      }
      case RegexKind::Concat: {
        Table a = table(r.left()), b = table(r.right());
        for (std::size_t i = 0; i <= n; ++i)
          for (std::size_t m = i; m <= n; ++m)
            if (a[i][m])
              for (std::size_t j = m; j <= n; ++j)
                if (b[m][j]) t[i][j] = true;
        break;
      }
      case RegexKind::Question: {
        t = table(r.inner());
        for (std::size_t i = 0; i <= n; ++i) t[i][i] = true;
        break;
      }
      case RegexKind::Star: {
        Table a = table(r.inner());
        for (std::size_t i = 0; i <= n; ++i) t[i][i] = true;
        // transitive closure by increasing span
        for (std::size_t len = 1; len <= n; ++len)
          for (std::size_t i = 0; i + len <= n; ++i) {
            std::size_t j = i + len;
            for (std::size_t m = i + 1; m <= j && !t[i][j]; ++m)
              if (a[i][m] && t[m][j]) t[i][j] = true;
          }
        break;
      }
    }
    return t;
  }
};

inline bool interval_matches(const Regex& r, const std::string& s) { return IntervalMatcher(r, s).full(); }

/// Random complete AST over `sigma` with at most `max_size` nodes. Covers all
/// complete node kinds, including Empty and Epsilon when `with_units` is set.
inline Regex random_regex(rxsynth::Rng& rng, const Alphabet& sigma, std::size_t max_size, bool with_units = true) {
  using rxsynth::uniform_index;
  std::function<Regex(std::size_t)> grow = [&](std::size_t budget) -> Regex {
    std::size_t kinds = budget >= 3 ? 8 : (budget == 2 ? 6 : 4);
    std::size_t pick = uniform_index(rng, kinds);
    switch (pick) {
      case 0:
      case 1:
        return Regex::literal(sigma.at(uniform_index(rng, sigma.size())));
      case 2:
        return Regex::wildcard();
      case 3:
        if (!with_units) return Regex::literal(sigma.at(uniform_index(rng, sigma.size())));
        return rxsynth::coin(rng) ? Regex::epsilon() : Regex::empty();
      case 4:
        return Regex::star(grow(budget - 1));
      case 5:
        return Regex::question(grow(budget - 1));
      default: {
        std::size_t left = 1 + uniform_index(rng, budget - 2);
        Regex a = grow(left);
        Regex b = grow(budget - 1 - left);
        return pick == 6 ? Regex::alt(a, b) : Regex::concat(a, b);
      }
    }
  };
  return grow(1 + uniform_index(rng, max_size));
}

/// All strings over sigma of length <= k.
inline std::vector<std::string> all_strings(const Alphabet& sigma, std::size_t k) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= k; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char c : sigma.symbols()) out.push_back(out[i] + c);
    begin = end;
  }
  return out;
}

}  // namespace oracle
