#include "rxsynth/alpharegex.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "rxsynth/matcher.hpp"

namespace rxsynth {

int cost(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Wildcard:
      return 2;
    case RegexKind::Union:
    case RegexKind::Concat:
      return 1 + cost(r.left()) + cost(r.right());
    case RegexKind::Star:
    case RegexKind::Question:
      return 1 + cost(r.inner());
    default:
      return 1;
  }
}

namespace {

void flatten(const Regex& r, RegexKind kind, std::vector<Regex>& out) {
  if (r.is(kind)) {
    flatten(r.left(), kind, out);
    flatten(r.right(), kind, out);
  } else {
    out.push_back(r);
  }
}

void write_key(const Regex& r, std::string& out) {
  switch (r.kind()) {
    case RegexKind::Empty: out += '0'; return;
    case RegexKind::Epsilon: out += 'E'; return;
    case RegexKind::Literal: out += '\''; out += r.symbol(); return;
    case RegexKind::Wildcard: out += '.'; return;
    case RegexKind::Hole: out += '#'; return;
    case RegexKind::Star: out += "S("; write_key(r.inner(), out); out += ')'; return;
    case RegexKind::Question: out += "Q("; write_key(r.inner(), out); out += ')'; return;
    case RegexKind::Concat:
    case RegexKind::Union: {
      std::vector<Regex> items;
      flatten(r, r.kind(), items);
      std::vector<std::string> keys;
      keys.reserve(items.size());
      for (const auto& item : items) {
        keys.emplace_back();
        write_key(item, keys.back());
      }
      if (r.is(RegexKind::Union)) std::sort(keys.begin(), keys.end());
      out += r.is(RegexKind::Union) ? "U(" : "C(";
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i > 0) out += ',';
        out += keys[i];
      }
      out += ')';
      return;
    }
  }
}

int max_hole_id(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Hole:
      return r.hole_id();
    case RegexKind::Union:
    case RegexKind::Concat:
      return std::max(max_hole_id(r.left()), max_hole_id(r.right()));
    case RegexKind::Star:
    case RegexKind::Question:
      return max_hole_id(r.inner());
    default:
      return -1;
  }
}

// Replaces the leftmost hole; `done` turns true once it has happened.
Regex fill_leftmost(const Regex& r, const Regex& with, bool& done) {
  if (done || r.complete()) return r;
  switch (r.kind()) {
    case RegexKind::Hole:
      done = true;
      return with;
    case RegexKind::Union:
    case RegexKind::Concat: {
      Regex a = fill_leftmost(r.left(), with, done);
      Regex b = fill_leftmost(r.right(), with, done);
      return r.is(RegexKind::Union) ? Regex::alt(a, b) : Regex::concat(a, b);
    }
    case RegexKind::Star:
      return Regex::star(fill_leftmost(r.inner(), with, done));
    case RegexKind::Question:
      return Regex::question(fill_leftmost(r.inner(), with, done));
    default:
      return r;
  }
}

Regex in_context(const Regex& prefix, const Regex& r, const Regex& suffix) {
  Regex out = r;
  if (!prefix.is(RegexKind::Epsilon)) out = Regex::concat(prefix, out);
  if (!suffix.is(RegexKind::Epsilon)) out = Regex::concat(out, suffix);
  return out;
}

}  // namespace

std::string dedup_key(const Regex& r) {
  std::string out;
  write_key(r, out);
  return out;
}

std::vector<SearchState> expand(const SearchState& state, const Alphabet& alphabet,
                                std::unordered_set<std::string>* visited) {
  if (state.tmpl.complete()) throw std::invalid_argument("expand: template has no hole");
  const int h = max_hole_id(state.tmpl) + 1;
  std::vector<Regex> fillers;
  fillers.reserve(alphabet.size() + 5);
  for (char c : alphabet.symbols()) fillers.push_back(Regex::literal(c));
  fillers.push_back(Regex::wildcard());
  fillers.push_back(Regex::alt(Regex::hole(h), Regex::hole(h + 1)));
  fillers.push_back(Regex::concat(Regex::hole(h), Regex::hole(h + 1)));
  fillers.push_back(Regex::star(Regex::hole(h)));
  fillers.push_back(Regex::question(Regex::hole(h)));

  std::vector<SearchState> out;
  out.reserve(fillers.size());
  for (const auto& f : fillers) {
    bool done = false;
    Regex next = simplify(fill_leftmost(state.tmpl, f, done));
    if (visited && !visited->insert(dedup_key(next)).second) continue;
    out.push_back({next, cost(next)});
  }
  return out;
}

bool prune_overapprox(const Regex& tmpl, const std::vector<std::string>& positives) {
  PositionAutomaton upper(tmpl, HoleMode::Universal);
  for (const auto& p : positives)
    if (!upper.matches(p)) return true;
  return false;
}

bool prune_underapprox(const Regex& tmpl, const std::vector<std::string>& negatives, const Regex& prefix,
                       const Regex& suffix) {
  if (negatives.empty()) return false;
  PositionAutomaton lower(in_context(prefix, tmpl, suffix), HoleMode::Empty);
  for (const auto& n : negatives)
    if (lower.matches(n)) return true;
  return false;
}

SynthOutcome AlphaRegex::synthesize(const SynthesisProblem& problem, const Deadline& deadline,
                                    std::size_t max_states) const {
  const auto& P = problem.positives;
  const auto& N = problem.negatives;
  auto survives = [&](const Regex& t) {
    if (options_.prune || t.complete())
      return !prune_overapprox(t, P) && !prune_underapprox(t, N, problem.prefix, problem.suffix);
    return true;
  };

  // one FIFO bucket per priority
  std::vector<std::deque<Regex>> buckets;
  auto push = [&](const Regex& t, int priority) {
    if (buckets.size() <= static_cast<std::size_t>(priority)) buckets.resize(static_cast<std::size_t>(priority) + 1);
    buckets[static_cast<std::size_t>(priority)].push_back(t);
  };

  std::unordered_set<std::string> visited;
  Regex root = Regex::hole(0);
  visited.insert(dedup_key(root));
  push(root, cost(root));

  SynthOutcome outcome;
  std::size_t current = 0;
  while (true) {
    while (current < buckets.size() && buckets[current].empty()) ++current;
    if (current >= buckets.size()) {
      outcome.status = SynthStatus::Unsat;
      return outcome;
    }
    if (deadline.expired() || outcome.states >= max_states) {
      outcome.status = SynthStatus::Timeout;
      return outcome;
    }
    Regex t = std::move(buckets[current].front());
    buckets[current].pop_front();
    ++outcome.states;
    const int priority = static_cast<int>(current);
    if (options_.on_pop) options_.on_pop(priority);

    if (t.complete()) {
      // only consistent complete templates are ever queued
      outcome.status = SynthStatus::Success;
      outcome.regex = t;
      return outcome;
    }
    for (auto& next : expand({t, priority}, problem.alphabet, &visited)) {
      if (!survives(next.tmpl)) continue;
      // simplification can lower the cost below the frontier; such states
      // are queued at the current priority so pops stay monotone
      push(next.tmpl, std::max(next.cost, priority));
    }
  }
}

}  // namespace rxsynth
