#include "rxsynth/bluefringe.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "rxsynth/error.hpp"
#include "rxsynth/matcher.hpp"

namespace rxsynth {

Apta build_apta(const ExamplePair& pair) {
  const std::size_t k = pair.alphabet.size();
  // trie in insertion order first
  std::vector<std::vector<int>> next{std::vector<int>(k, -1)};
  std::vector<StateLabel> label{StateLabel::Unknown};
  auto insert = [&](const std::string& s, StateLabel l) {
    int q = 0;
    for (char c : s) {
      int a = pair.alphabet.index_of(c);
      if (a < 0) throw AlphabetError(std::string("symbol '") + c + "' is not in the alphabet");
      int& t = next[static_cast<std::size_t>(q)][static_cast<std::size_t>(a)];
      if (t < 0) {
        t = static_cast<int>(label.size());
        next.emplace_back(k, -1);
        label.push_back(StateLabel::Unknown);
      }
      q = t;
    }
    StateLabel& cur = label[static_cast<std::size_t>(q)];
    if (cur != StateLabel::Unknown && cur != l) throw ConflictError("'" + s + "' is both positive and negative");
    cur = l;
  };
  for (const auto& p : pair.positives) insert(p, StateLabel::Accept);
  for (const auto& n : pair.negatives) insert(n, StateLabel::Reject);

  // breadth-first renumbering
  Apta apta;
  apta.alphabet = pair.alphabet;
  std::vector<int> order{0}, id(label.size(), -1);
  id[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int t : next[static_cast<std::size_t>(order[i])])
      if (t >= 0) {
        id[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
      }
  apta.next.assign(order.size(), std::vector<int>(k, -1));
  apta.label.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto old = static_cast<std::size_t>(order[i]);
    apta.label[i] = label[old];
    for (std::size_t a = 0; a < k; ++a)
      if (next[old][a] >= 0) apta.next[i][a] = id[static_cast<std::size_t>(next[old][a])];
  }
  return apta;
}

namespace {

struct Graph {
  std::vector<std::vector<int>> next;
  std::vector<StateLabel> label;
};

// Folds the tree rooted at `blue` into `red`; returns the agreement score or
// -1 on an accept/reject clash.
int fold(Graph& g, int red, int blue) {
  int score = 0;
  std::vector<std::pair<int, int>> work{{red, blue}};
  while (!work.empty()) {
    auto [r, b] = work.back();
    work.pop_back();
    StateLabel& lr = g.label[static_cast<std::size_t>(r)];
    StateLabel lb = g.label[static_cast<std::size_t>(b)];
    if (lb != StateLabel::Unknown) {
      if (lr == StateLabel::Unknown) {
        lr = lb;
      } else if (lr != lb) {
        return -1;
      } else {
        ++score;
      }
    }
    auto& nr = g.next[static_cast<std::size_t>(r)];
    const auto& nb = g.next[static_cast<std::size_t>(b)];
    for (std::size_t a = 0; a < nr.size(); ++a) {
      if (nb[a] < 0) continue;
      if (nr[a] < 0) {
        nr[a] = nb[a];
      } else {
        work.emplace_back(nr[a], nb[a]);
      }
    }
  }
  return score;
}

// Redirects the single edge into `blue` to `red`, then folds.
int merge(Graph& g, const std::vector<int>& reds, int red, int blue) {
  for (int r : reds)
    for (auto& t : g.next[static_cast<std::size_t>(r)])
      if (t == blue) t = red;
  return fold(g, red, blue);
}

std::vector<int> blue_states(const Graph& g, const std::vector<bool>& is_red, const std::vector<int>& reds) {
  std::set<int> blues;
  for (int r : reds)
    for (int t : g.next[static_cast<std::size_t>(r)])
      if (t >= 0 && !is_red[static_cast<std::size_t>(t)]) blues.insert(t);
  return {blues.begin(), blues.end()};
}

Regex symbols_regex(const std::vector<bool>& on, const Alphabet& alphabet) {
  if (std::all_of(on.begin(), on.end(), [](bool b) { return b; })) return Regex::wildcard();
  std::optional<Regex> out;
  for (std::size_t a = 0; a < on.size(); ++a) {
    if (!on[a]) continue;
    Regex lit = Regex::literal(alphabet.at(a));
    out = out ? Regex::alt(*out, lit) : lit;
  }
  return *out;
}

}  // namespace

std::optional<Dfa> run_bluefringe(const ExamplePair& pair, const Deadline& deadline) {
  Apta apta = build_apta(pair);
  Graph g{apta.next, apta.label};
  std::vector<bool> is_red(g.label.size(), false);
  std::vector<int> reds{apta.root};
  is_red[static_cast<std::size_t>(apta.root)] = true;

  while (true) {
    if (deadline.expired()) return std::nullopt;
    std::vector<int> blues = blue_states(g, is_red, reds);
    if (blues.empty()) break;

    int best_score = -1, best_red = -1, best_blue = -1;
    int promote = -1;
    for (int b : blues) {
      bool mergeable = false;
      for (int r : reds) {
        Graph trial = g;
        int score = merge(trial, reds, r, b);
        if (score < 0) continue;
        mergeable = true;
        if (score > best_score) {
          best_score = score;
          best_red = r;
          best_blue = b;
        }
      }
      if (!mergeable) {
        promote = b;
        break;
      }
    }
    if (promote >= 0) {
      is_red[static_cast<std::size_t>(promote)] = true;
      reds.push_back(promote);
      std::sort(reds.begin(), reds.end());
      continue;
    }
    merge(g, reds, best_red, best_blue);
  }

  // Reds are exactly the reachable states now.
  Dfa d(apta.alphabet);
  std::map<int, int> id;
  for (int r : reds) id[r] = d.add_state(g.label[static_cast<std::size_t>(r)] != StateLabel::Reject);
  d.set_start(id.at(apta.root));
  for (int r : reds)
    for (std::size_t a = 0; a < apta.alphabet.size(); ++a) {
      int t = g.next[static_cast<std::size_t>(r)][a];
      if (t >= 0) d.set_next(id.at(r), a, id.at(t));
    }
  return d;
}

Regex dfa_to_regex(const Dfa& d) {
  const std::size_t n = d.size(), k = d.alphabet().size();
  if (n == 0) return Regex::empty();

  // trim: keep states reachable from start that can reach an accepting state
  std::vector<bool> reach(n, false), live(n, false);
  std::deque<int> q{d.start()};
  reach[static_cast<std::size_t>(d.start())] = true;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    for (std::size_t a = 0; a < k; ++a) {
      int t = d.next(s, a);
      if (t >= 0 && !reach[static_cast<std::size_t>(t)]) {
        reach[static_cast<std::size_t>(t)] = true;
        q.push_back(t);
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) live[s] = d.accepting(static_cast<int>(s));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (live[s]) continue;
      for (std::size_t a = 0; a < k; ++a) {
        int t = d.next(static_cast<int>(s), a);
        if (t >= 0 && live[static_cast<std::size_t>(t)]) {
          live[s] = changed = true;
          break;
        }
      }
    }
  }
  if (!live[static_cast<std::size_t>(d.start())]) return Regex::empty();

  // generalized automaton: states 0..n-1, start n, final n+1
  const std::size_t S = n, F = n + 1;
  std::vector<std::map<std::size_t, Regex>> out(n + 2), in(n + 2);
  auto add_edge = [&](std::size_t i, std::size_t j, const Regex& r) {
    auto it = out[i].find(j);
    Regex e = it == out[i].end() ? r : simplify(Regex::alt(it->second, r));
    out[i][j] = e;
    in[j][i] = e;
  };
  auto keep = [&](std::size_t s) { return reach[s] && live[s]; };
  add_edge(S, static_cast<std::size_t>(d.start()), Regex::epsilon());
  for (std::size_t s = 0; s < n; ++s) {
    if (!keep(s)) continue;
    if (d.accepting(static_cast<int>(s))) add_edge(s, F, Regex::epsilon());
    std::map<std::size_t, std::vector<bool>> by_target;
    for (std::size_t a = 0; a < k; ++a) {
      int t = d.next(static_cast<int>(s), a);
      if (t < 0 || !keep(static_cast<std::size_t>(t))) continue;
      auto& on = by_target[static_cast<std::size_t>(t)];
      on.resize(k, false);
      on[a] = true;
    }
    for (const auto& [t, on] : by_target) add_edge(s, t, symbols_regex(on, d.alphabet()));
  }

  std::set<std::size_t> remaining;
  for (std::size_t s = 0; s < n; ++s)
    if (keep(s)) remaining.insert(s);
  while (!remaining.empty()) {
    std::size_t victim = *remaining.begin();
    std::size_t best = static_cast<std::size_t>(-1);
    for (std::size_t s : remaining) {
      std::size_t din = in[s].size() - in[s].count(s), dout = out[s].size() - out[s].count(s);
      if (din * dout < best) {
        best = din * dout;
        victim = s;
      }
    }
    auto loop_it = out[victim].find(victim);
    Regex loop = loop_it == out[victim].end() ? Regex::epsilon() : Regex::star(loop_it->second);
    std::vector<std::pair<std::size_t, Regex>> preds, succs;
    for (const auto& [i, r] : in[victim])
      if (i != victim) preds.emplace_back(i, r);
    for (const auto& [j, r] : out[victim])
      if (j != victim) succs.emplace_back(j, r);
    for (const auto& [i, r] : preds) out[i].erase(victim);
    for (const auto& [j, r] : succs) in[j].erase(victim);
    out[victim].clear();
    in[victim].clear();
    for (const auto& [i, ri] : preds)
      for (const auto& [j, rj] : succs) add_edge(i, j, simplify(Regex::concat(Regex::concat(ri, loop), rj)));
    remaining.erase(victim);
  }
  auto it = out[S].find(F);
  return it == out[S].end() ? Regex::empty() : simplify(it->second);
}

std::vector<std::string> context_negatives(const std::vector<std::string>& negatives, const Regex& prefix,
                                           const Regex& suffix) {
  if (prefix.is(RegexKind::Epsilon) && suffix.is(RegexKind::Epsilon)) return negatives;
  PositionAutomaton pre(prefix), suf(suffix);
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& n : negatives) {
    std::string_view v(n);
    for (std::size_t i = 0; i <= n.size(); ++i) {
      if (!pre.matches(v.substr(0, i))) continue;
      for (std::size_t j = i; j <= n.size(); ++j) {
        if (!suf.matches(v.substr(j))) continue;
        std::string mid(v.substr(i, j - i));
        if (seen.insert(mid).second) out.push_back(mid);
      }
    }
  }
  return out;
}

SynthOutcome BlueFringe::synthesize(const SynthesisProblem& problem, const Deadline& deadline, std::size_t) const {
  SynthOutcome outcome;
  ExamplePair pair{problem.alphabet, problem.positives,
                   context_negatives(problem.negatives, problem.prefix, problem.suffix)};
  std::set<std::string> pos(pair.positives.begin(), pair.positives.end());
  for (const auto& n : pair.negatives)
    if (pos.count(n)) {
      outcome.status = SynthStatus::Unsat;
      return outcome;
    }
  auto dfa = run_bluefringe(pair, deadline);
  if (!dfa) {
    outcome.status = SynthStatus::Timeout;
    return outcome;
  }
  outcome.states = dfa->size();
  Regex r = dfa_to_regex(*dfa);
  if (!accepts_candidate(problem, r)) {
    outcome.status = SynthStatus::Unsat;
    return outcome;
  }
  outcome.status = SynthStatus::Success;
  outcome.regex = r;
  return outcome;
}

}  // namespace rxsynth
