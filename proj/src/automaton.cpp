#include "rxsynth/automaton.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <utility>

#include "rxsynth/error.hpp"
#include "rxsynth/matcher.hpp"

namespace rxsynth {

int Dfa::add_state(bool accepting) {
  accepting_.push_back(accepting);
  next_.resize(next_.size() + width(), kNone);
  return static_cast<int>(accepting_.size() - 1);
}

bool Dfa::accepts(std::string_view s) const {
  if (accepting_.empty()) return false;
  int q = start_;
  for (char c : s) {
    int idx = alphabet_.index_of(c);
    if (idx < 0) return false;
    q = next(q, static_cast<std::size_t>(idx));
    if (q == kNone) return false;
  }
  return accepting(q);
}

Dfa compile_dfa(const Regex& r, const Alphabet& alphabet) {
  PositionAutomaton pa(r);
  const std::size_t n = pa.positions();
  using Set = std::vector<bool>;

  auto is_final = [&](const Set& s) {
    for (std::size_t p = 0; p < n; ++p) {
      if (s[p] && pa.last_contains(p)) return true;
    }
    return false;
  };
  auto reads = [&](std::size_t p, char c) {
    char sym = pa.position_symbol(p);
    return sym == '\0' || sym == c;
  };

  Dfa dfa(alphabet);
  std::map<Set, int> ids;
  std::deque<Set> work;

  // the initial state has read nothing; it is kept apart from position sets
  int initial = dfa.add_state(pa.nullable());
  dfa.set_start(initial);

  auto intern = [&](Set s) {
    auto [it, inserted] = ids.emplace(std::move(s), 0);
    if (inserted) {
      it->second = dfa.add_state(is_final(it->first));
      work.push_back(it->first);
    }
    return it->second;
  };

  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    Set next(n, false);
    bool any = false;
    for (std::size_t p = 0; p < n; ++p) {
      if (pa.first_contains(p) && reads(p, alphabet.at(a))) next[p] = any = true;
    }
    if (any) dfa.set_next(initial, a, intern(std::move(next)));
  }
  while (!work.empty()) {
    Set cur = std::move(work.front());
    work.pop_front();
    int from = ids.at(cur);
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      Set next(n, false);
      bool any = false;
      for (std::size_t p = 0; p < n; ++p) {
        if (!cur[p]) continue;
        for (std::size_t q = 0; q < n; ++q) {
          if (!next[q] && pa.follow_contains(p, q) && reads(q, alphabet.at(a))) next[q] = any = true;
        }
      }
      if (any) dfa.set_next(from, a, intern(std::move(next)));
    }
  }
  return dfa;
}

Dfa complete(const Dfa& d) {
  Dfa out = d;
  int sink = Dfa::kNone;
  for (std::size_t q = 0; q < d.size(); ++q) {
    for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
      if (out.next(static_cast<int>(q), a) != Dfa::kNone) continue;
      if (sink == Dfa::kNone) {
        sink = out.add_state(false);
        for (std::size_t b = 0; b < d.alphabet().size(); ++b) out.set_next(sink, b, sink);
      }
      out.set_next(static_cast<int>(q), a, sink);
    }
  }
  if (out.size() == 0) {
    sink = out.add_state(false);
    for (std::size_t b = 0; b < d.alphabet().size(); ++b) out.set_next(sink, b, sink);
    out.set_start(sink);
  }
  return out;
}

Dfa complement(const Dfa& d) {
  Dfa out = complete(d);
  for (std::size_t q = 0; q < out.size(); ++q) out.set_accepting(static_cast<int>(q), !out.accepting(static_cast<int>(q)));
  return out;
}

std::optional<std::string> find_difference(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet() == b.alphabet())) throw AlphabetError("automata over different alphabets");
  const Alphabet& sigma = a.alphabet();
  auto accepts_state = [](const Dfa& d, int q) { return q != Dfa::kNone && d.accepting(q); };
  using Pair = std::pair<int, int>;

  int sa = a.size() ? a.start() : Dfa::kNone;
  int sb = b.size() ? b.start() : Dfa::kNone;
  std::map<Pair, std::pair<Pair, char>> parent;
  std::deque<Pair> queue;
  parent.emplace(Pair{sa, sb}, std::pair{Pair{sa, sb}, '\0'});
  queue.push_back({sa, sb});
  while (!queue.empty()) {
    Pair cur = queue.front();
    queue.pop_front();
    if (accepts_state(a, cur.first) != accepts_state(b, cur.second)) {
      std::string s;
      for (Pair p = cur; p != Pair{sa, sb};) {
        const auto& [prev, c] = parent.at(p);
        s.insert(s.begin(), c);
        p = prev;
      }
      return s;
    }
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      int na = cur.first == Dfa::kNone ? Dfa::kNone : a.next(cur.first, i);
      int nb = cur.second == Dfa::kNone ? Dfa::kNone : b.next(cur.second, i);
      Pair nxt{na, nb};
      if (parent.emplace(nxt, std::pair{cur, sigma.at(i)}).second) queue.push_back(nxt);
    }
  }
  return std::nullopt;
}

namespace {

// counts[len][q] = number of accepted strings of exactly `len` symbols read
// from state q
std::vector<std::vector<double>> suffix_counts(const Dfa& d, int max_len) {
  std::vector<std::vector<double>> counts(static_cast<std::size_t>(max_len) + 1, std::vector<double>(d.size(), 0.0));
  for (std::size_t q = 0; q < d.size(); ++q) counts[0][q] = d.accepting(static_cast<int>(q)) ? 1.0 : 0.0;
  for (std::size_t len = 1; len < counts.size(); ++len) {
    for (std::size_t q = 0; q < d.size(); ++q) {
      double total = 0.0;
      for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
        int t = d.next(static_cast<int>(q), a);
        if (t != Dfa::kNone) total += counts[len - 1][static_cast<std::size_t>(t)];
      }
      counts[len][q] = total;
    }
  }
  return counts;
}

}  // namespace

double count_accepted(const Dfa& d, int max_len) {
  if (d.size() == 0 || max_len < 0) return 0.0;
  auto counts = suffix_counts(d, max_len);
  double total = 0.0;
  for (const auto& row : counts) total += row[static_cast<std::size_t>(d.start())];
  return total;
}

std::optional<std::string> sample_accepted(const Dfa& d, int max_len, Rng& rng) {
  if (d.size() == 0 || max_len < 0) return std::nullopt;
  auto counts = suffix_counts(d, max_len);
  const auto start = static_cast<std::size_t>(d.start());
  double total = 0.0;
  for (const auto& row : counts) total += row[start];
  if (total <= 0.0) return std::nullopt;

  double pick = uniform01(rng) * total;
  std::size_t len = 0;
  for (; len + 1 < counts.size(); ++len) {
    if (pick < counts[len][start]) break;
    pick -= counts[len][start];
  }
  while (counts[len][start] <= 0.0) --len;  // rounding guard

  std::string out;
  int q = d.start();
  for (std::size_t remaining = len; remaining > 0; --remaining) {
    double mass = counts[remaining][static_cast<std::size_t>(q)];
    double r = uniform01(rng) * mass;
    int chosen = Dfa::kNone;
    std::size_t chosen_sym = 0;
    for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
      int t = d.next(q, a);
      if (t == Dfa::kNone) continue;
      double w = counts[remaining - 1][static_cast<std::size_t>(t)];
      if (w <= 0.0) continue;
      chosen = t;
      chosen_sym = a;
      if (r < w) break;
      r -= w;
    }
    out += d.alphabet().at(chosen_sym);
    q = chosen;
  }
  return out;
}

std::string to_text(const Dfa& d) {
  std::ostringstream out;
  out << "start: " << d.start() << "\naccept:";
  for (std::size_t q = 0; q < d.size(); ++q) {
    if (d.accepting(static_cast<int>(q))) out << ' ' << q;
  }
  out << '\n';
  for (std::size_t q = 0; q < d.size(); ++q) {
    for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
      int t = d.next(static_cast<int>(q), a);
      if (t != Dfa::kNone) out << q << ' ' << d.alphabet().at(a) << ' ' << t << '\n';
    }
  }
  return out.str();
}

}  // namespace rxsynth
