#include "rxsynth/split_synthesis.hpp"

#include <future>
#include <set>
#include <stdexcept>

#include "rxsynth/error.hpp"
#include "rxsynth/matcher.hpp"

namespace rxsynth {

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::IndependentSequential: return "seq";
    case Strategy::IndependentParallel: return "par";
    case Strategy::PrefixConditionedAll: return "prefix-all";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "seq") return Strategy::IndependentSequential;
  if (name == "par") return Strategy::IndependentParallel;
  if (name == "prefix-all") return Strategy::PrefixConditionedAll;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

bool prefix_conditioned_accept(const Regex& prefix, const Regex& candidate, const std::vector<std::string>& part,
                               const std::vector<std::string>& negatives) {
  SynthesisProblem problem{Alphabet(), part, negatives, prefix};
  return accepts_candidate(problem, candidate);
}

namespace {

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Regex words(const std::vector<std::string>& strings) {
  std::optional<Regex> out;
  for (const auto& s : strings) out = out ? Regex::alt(*out, Regex::word(s)) : Regex::word(s);
  return out ? *out : Regex::empty();
}

std::optional<std::string> first_match(const Regex& r, const std::vector<std::string>& strings) {
  PositionAutomaton a(r);
  for (const auto& s : strings)
    if (a.matches(s)) return s;
  return std::nullopt;
}

std::vector<std::string> minus(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> drop(b.begin(), b.end());
  std::vector<std::string> out;
  for (const auto& s : a)
    if (!drop.count(s)) out.push_back(s);
  return out;
}

struct PartJob {
  SynthesisProblem problem;
  std::optional<Regex> result;
  SynthStatus status = SynthStatus::Timeout;
  double elapsed = 0;
  bool called = false;
};

void solve(PartJob& job, const SynthEngine& engine, const Deadline& deadline, std::size_t max_states) {
  auto start = Clock::now();
  job.called = true;
  SynthOutcome out = engine.synthesize(job.problem, deadline, max_states);
  job.status = out.status;
  job.result = out.regex;
  job.elapsed = seconds_since(start);
}

}  // namespace

SplitSynthesisResult synthesize_partition(const ExamplePair& pair, const SplitPartition& partition,
                                          const SynthEngine& engine, const SplitOptions& options,
                                          const Deadline& deadline, std::size_t max_states) {
  const auto start = Clock::now();
  const auto S = static_cast<std::size_t>(partition.parts);
  SplitSynthesisResult res;
  res.subregexes.assign(S, std::nullopt);
  res.part_elapsed.assign(S, 0.0);

  std::vector<Regex> slot(S + 1);
  for (std::size_t k = 0; k <= S; ++k)
    slot[k] = partition.wildcard_slots[k] ? Regex::star(Regex::wildcard()) : Regex::epsilon();
  std::vector<std::vector<std::string>> P(S);
  for (std::size_t i = 0; i < S; ++i) P[i] = partition.distinct_part(i);

  auto finish = [&](SplitStatus status, std::string detail = {}) {
    res.status = status;
    res.detail = std::move(detail);
    if (status == SplitStatus::SplitFailure && options.fallback && !deadline.expired()) {
      SynthOutcome whole = engine.synthesize({pair.alphabet, pair.positives, pair.negatives}, deadline, max_states);
      ++res.engine_calls;
      if (whole.status == SynthStatus::Success) {
        res.final = whole.regex;
        res.status = SplitStatus::Success;
        res.fell_back = true;
      } else if (whole.status == SynthStatus::Timeout) {
        res.status = SplitStatus::Timeout;
      }
    }
    res.total_elapsed = seconds_since(start);
    return res;
  };

  // Every R_i contains P_i, so if the concatenation of the literal parts
  // already accepts a negative, no choice of subregexes can work.
  {
    std::vector<Regex> pieces{slot[0]};
    for (std::size_t i = 0; i < S; ++i) {
      pieces.push_back(words(P[i]));
      pieces.push_back(slot[i + 1]);
    }
    if (auto n = first_match(Regex::concat_all(pieces), pair.negatives))
      return finish(SplitStatus::SplitFailure, "every completion of this split accepts negative '" + *n + "'");
  }

  auto prefix_before = [&](std::size_t i) {
    std::vector<Regex> pieces{slot[0]};
    for (std::size_t j = 0; j < i; ++j) {
      pieces.push_back(*res.subregexes[j]);
      pieces.push_back(slot[j + 1]);
    }
    return Regex::concat_all(pieces);
  };

  // Positive prefixes through part i, for the prefix-conditioned strategy.
  auto prefixes_through = [&](std::size_t i) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < partition.source_labelings.size(); ++k) {
      std::string s = partition.slot_strings[0][k];
      for (std::size_t j = 0; j <= i; ++j) {
        s += partition.part_strings[j][k];
        if (j < i) s += partition.slot_strings[j + 1][k];
      }
      out.push_back(s);
    }
    return out;
  };

  auto conditioned_job = [&](std::size_t i, const std::vector<std::string>& negatives,
                             const Regex& suffix) -> std::optional<PartJob> {
    Regex prefix = prefix_before(i);
    // same argument as above, now with the fixed prefix
    if (first_match(Regex::concat(Regex::concat(prefix, words(P[i])), suffix), negatives)) return std::nullopt;
    PartJob job;
    job.problem = {pair.alphabet, P[i], negatives, prefix, suffix};
    return job;
  };

  auto record = [&](std::size_t i, PartJob& job) -> std::optional<SplitStatus> {
    res.part_elapsed[i] = job.elapsed;
    if (job.called) ++res.engine_calls;
    if (job.status == SynthStatus::Timeout) return SplitStatus::Timeout;
    if (job.status == SynthStatus::Unsat) return SplitStatus::SplitFailure;
    res.subregexes[i] = job.result;
    return std::nullopt;
  };

  auto singleton = [&](std::size_t i) {
    if (P[i].size() != 1) return false;
    res.subregexes[i] = Regex::word(P[i][0]);
    return true;
  };

  if (S > 0) {
    const std::size_t last = S - 1;
    if (options.strategy == Strategy::PrefixConditionedAll) {
      for (std::size_t i = 0; i < last; ++i) {
        if (singleton(i)) continue;
        auto job = conditioned_job(i, minus(pair.negatives, prefixes_through(i)), Regex::epsilon());
        if (!job) return finish(SplitStatus::SplitFailure, "part " + std::to_string(i + 1) + " cannot avoid a negative");
        solve(*job, engine, deadline, max_states);
        if (auto fail = record(i, *job)) return finish(*fail, "part " + std::to_string(i + 1));
      }
    } else {
      std::vector<PartJob> jobs(last);
      std::vector<std::size_t> todo;
      for (std::size_t i = 0; i < last; ++i) {
        if (singleton(i)) continue;
        jobs[i].problem = {pair.alphabet, P[i], minus(pair.negatives, P[i])};
        todo.push_back(i);
      }
      if (options.strategy == Strategy::IndependentParallel && todo.size() > 1) {
        std::vector<std::future<void>> running;
        for (std::size_t i : todo)
          running.push_back(std::async(std::launch::async, [&, i] { solve(jobs[i], engine, deadline, max_states); }));
        for (auto& f : running) f.get();
      } else {
        for (std::size_t i : todo) {
          solve(jobs[i], engine, deadline, max_states);
          if (jobs[i].status != SynthStatus::Success) break;
        }
      }
      for (std::size_t i : todo) {
        if (!jobs[i].called) break;
        if (auto fail = record(i, jobs[i])) return finish(*fail, "part " + std::to_string(i + 1));
      }
    }

    if (!singleton(last)) {
      auto job = conditioned_job(last, pair.negatives, slot[S]);
      if (!job) return finish(SplitStatus::SplitFailure, "last part cannot avoid a negative after its prefix");
      solve(*job, engine, deadline, max_states);
      if (auto fail = record(last, *job)) return finish(*fail, "last part");
    }
  }

  std::vector<Regex> pieces{slot[0]};
  for (std::size_t i = 0; i < S; ++i) {
    pieces.push_back(*res.subregexes[i]);
    pieces.push_back(slot[i + 1]);
  }
  res.final = simplify(Regex::concat_all(pieces));
  if (!accepts_candidate({pair.alphabet, pair.positives, pair.negatives}, *res.final))
    return finish(SplitStatus::SplitFailure, "concatenation is inconsistent with the examples");
  return finish(SplitStatus::Success);
}

SplitSynthesisResult synthesize_split(const ExamplePair& pair, const SplitterKind& splitter,
                                      const SynthEngine& engine, const SplitOptions& options,
                                      const SynthesisBudget& budget) {
  const auto start = Clock::now();
  Deadline deadline(budget.timeout);
  SplitSynthesisResult res;
  try {
    SplitPartition partition = partition_from_labelings(run_splitter(splitter, pair.positives));
    res = synthesize_partition(pair, partition, engine, options, deadline, budget.max_states);
  } catch (const LabelingError& e) {
    res.status = SplitStatus::SplitFailure;
    res.detail = e.what();
  }
  res.total_elapsed = seconds_since(start);
  return res;
}

}  // namespace rxsynth
