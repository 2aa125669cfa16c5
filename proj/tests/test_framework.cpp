#include <doctest.h>

#include <atomic>

#include "rxsynth/alpharegex.hpp"
#include "rxsynth/bluefringe.hpp"
#include "rxsynth/error.hpp"
#include "rxsynth/matcher.hpp"
#include "rxsynth/split_synthesis.hpp"
#include "support/oracles.hpp"

using namespace rxsynth;

namespace {

class CountingEngine : public SynthEngine {
 public:
  explicit CountingEngine(const SynthEngine& inner) : inner_(inner) {}
  std::string name() const override { return inner_.name(); }
  SynthOutcome synthesize(const SynthesisProblem& p, const Deadline& d, std::size_t m) const override {
    ++calls;
    return inner_.synthesize(p, d, m);
  }
  mutable std::atomic<int> calls{0};

 private:
  const SynthEngine& inner_;
};

const Strategy kStrategies[] = {Strategy::IndependentSequential, Strategy::IndependentParallel,
                                Strategy::PrefixConditionedAll};

struct Instance {
  Regex target;
  ExamplePair pair;
};

// Random targets with a concatenation spine, 8 positives and 8 negatives.
std::vector<Instance> random_instances(std::uint64_t seed, std::size_t count, const Alphabet& sigma) {
  Rng rng(seed);
  std::vector<Instance> out;
  while (out.size() < count) {
    Regex a = oracle::random_regex(rng, sigma, 5, false), b = oracle::random_regex(rng, sigma, 5, false);
    Regex target = simplify(Regex::concat(a, b));
    try {
      auto P = gen_positives(target, sigma, 8, 8, rng());
      auto N = gen_negatives_symbol_perturb(target, sigma, P, 8, rng());
      out.push_back({target, {sigma, P, N}});
    } catch (const GenerationError&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("prefix_conditioned_accept") {
  Alphabet ab("ab");
  CHECK_FALSE(prefix_conditioned_accept(parse("ab*", ab), parse("aaa?", ab), {"aa", "aaa"}, {"aaaa"}));
  CHECK(prefix_conditioned_accept(Regex::epsilon(), parse("aaa?", ab), {"aa", "aaa"}, {"aaaa"}));
  CHECK_FALSE(prefix_conditioned_accept(Regex::epsilon(), parse("a*", ab), {"aa", "aaa"}, {"aaaa"}));
  CHECK(prefix_conditioned_accept(parse("ab*", ab), parse("a*", ab), {"aa"}, {}));
  CHECK_FALSE(prefix_conditioned_accept(parse("ab*", ab), parse("b", ab), {"aa"}, {}));
}

TEST_CASE("counterexample: runs splitter leads to SplitFailure") {
  Alphabet ab("ab");
  ExamplePair pair{ab, {"abbaaa", "abaaa", "aaa"}, {"aaaa"}};
  AlphaRegex engine;
  for (Strategy s : kStrategies) {
    auto t0 = Clock::now();
    auto res = synthesize_split(pair, RunsSplitter{}, engine, {s}, {3.0, 2'000'000});
    CHECK(res.status == SplitStatus::SplitFailure);
    CHECK(std::chrono::duration<double>(Clock::now() - t0).count() < 1.0);
  }
}

TEST_CASE("counterexample: the three-part 122333 split also fails") {
  Alphabet ab("ab");
  ExamplePair pair{ab, {"abbaaa", "abaaa", "aaa"}, {"aaaa"}};
  SplitPartition p = partition_from_labelings({{"abbaaa", "122333"}, {"abaaa", "12333"}, {"aaa", "133"}});
  CHECK(p.distinct_part(0) == std::vector<std::string>{"a"});
  CHECK(p.distinct_part(1) == std::vector<std::string>{"bb", "b", ""});
  CHECK(p.distinct_part(2) == std::vector<std::string>{"aaa", "aa"});
  for (Strategy s : kStrategies) {
    AlphaRegex alpha;
    CHECK(synthesize_partition(pair, p, alpha, {s}, Deadline(3.0), 2'000'000).status == SplitStatus::SplitFailure);
    BlueFringe blue;
    CHECK(synthesize_partition(pair, p, blue, {s}, Deadline(3.0), 2'000'000).status == SplitStatus::SplitFailure);
  }
  // with fallback the whole-problem engine rescues it
  AlphaRegex alpha;
  auto rescued = synthesize_partition(pair, p, alpha, {Strategy::IndependentSequential, true}, Deadline(5.0), 2'000'000);
  REQUIRE(rescued.status == SplitStatus::Success);
  CHECK(rescued.fell_back);
  CHECK_FALSE(matches(*rescued.final, "aaaa"));
}

TEST_CASE("ground-truth split of the worked example succeeds") {
  Alphabet abcd("abcd");
  Regex target = parse("a*b*c*.*", abcd);
  ExamplePair pair{abcd, {"aabbccabca", "abcbbc", "bbbcabb", "aabbbc"}, {}};
  AlphaRegex engine;
  for (Strategy s : kStrategies) {
    auto res = synthesize_split(pair, GroundTruthSplitter{target}, engine, {s}, {3.0, 2'000'000});
    REQUIRE(res.status == SplitStatus::Success);
    REQUIRE(res.subregexes.size() == 3);
    for (const auto& p : pair.positives) CHECK(matches(*res.final, p));
    auto spine = concat_spine(*res.final);
    CHECK(to_text(spine.back()) == ".*");
  }
}

TEST_CASE("ground-truth split with negatives: final consistency") {
  Alphabet ab("ab");
  Regex target = parse("a*b(a+b)", ab);
  ExamplePair pair{ab, {"ba", "bb", "aba", "aabb", "aaaba"}, {"a", "b", "aa", "abab", "bbb"}};
  AlphaRegex engine;
  for (Strategy s : kStrategies) {
    auto res = synthesize_split(pair, GroundTruthSplitter{target}, engine, {s}, {3.0, 2'000'000});
    REQUIRE(res.status == SplitStatus::Success);
    for (const auto& p : pair.positives) CHECK(matches(*res.final, p));
    for (const auto& n : pair.negatives) CHECK_FALSE(matches(*res.final, n));
  }
}

TEST_CASE("singleton rule skips the engine") {
  Alphabet abc("abc");
  // parts: {a}, {b, bb}, {c}
  ExamplePair pair{abc, {"abc", "abbc"}, {"ab", "abcc", "bc"}};
  AlphaRegex alpha;
  CountingEngine engine(alpha);
  auto res = synthesize_split(pair, GroundTruthSplitter{parse("ab*c", abc)}, engine, {}, {3.0, 2'000'000});
  REQUIRE(res.status == SplitStatus::Success);
  CHECK(engine.calls == 1);
  CHECK(res.engine_calls == 1);
  CHECK(to_text(*res.subregexes[0]) == "a");
  CHECK(to_text(*res.subregexes[2]) == "c");

  // λ as the only string of a part becomes ε
  auto empty_part = synthesize_partition({abc, {"ac"}, {}}, partition_from_labelings({{"ac", "13"}}), engine, {},
                                         Deadline(3.0), 2'000'000);
  REQUIRE(empty_part.status == SplitStatus::Success);
  CHECK(to_text(*empty_part.subregexes[1]) == "@epsilon");
  CHECK(to_text(*empty_part.final) == "ac");
  CHECK(engine.calls == 1);
}

TEST_CASE("strategies agree with the bare engine on one-part splits") {
  Rng rng(44);
  Alphabet ab("ab");
  AlphaRegex alpha;
  int tested = 0;
  for (int i = 0; i < 200 && tested < 15; ++i) {
    // a star at the root has no concatenation spine, so S = 1
    Regex target = simplify(Regex::star(oracle::random_regex(rng, ab, 4, false)));
    if (!target.is(RegexKind::Star)) continue;
    std::vector<std::string> P, N;
    try {
      P = gen_positives(target, ab, 6, 6, rng());
      N = gen_negatives_symbol_perturb(target, ab, P, 6, rng());
    } catch (const GenerationError&) {
      continue;
    }
    ExamplePair pair{ab, P, N};
    auto bare = alpha.synthesize({ab, P, N}, Deadline(3.0), 2'000'000);
    if (bare.status != SynthStatus::Success) continue;
    ++tested;
    for (Strategy s : kStrategies) {
      auto res = synthesize_split(pair, GroundTruthSplitter{target}, alpha, {s}, {3.0, 2'000'000});
      REQUIRE(res.status == SplitStatus::Success);
      CHECK(to_text(*res.final) == to_text(*bare.regex));
    }
  }
  CHECK(tested == 15);
}

TEST_CASE("parallel and sequential strategies produce the same regex") {
  Alphabet abc("abc");
  AlphaRegex alpha;
  BlueFringe blue;
  for (const auto& inst : random_instances(7, 25, abc)) {
    for (const SynthEngine* e : {static_cast<const SynthEngine*>(&alpha), static_cast<const SynthEngine*>(&blue)}) {
      auto seq = synthesize_split(inst.pair, GroundTruthSplitter{inst.target}, *e, {Strategy::IndependentSequential},
                                  {5.0, 2'000'000});
      auto par = synthesize_split(inst.pair, GroundTruthSplitter{inst.target}, *e, {Strategy::IndependentParallel},
                                  {5.0, 2'000'000});
      if (seq.status != SplitStatus::Success || par.status != SplitStatus::Success) {
        CHECK(seq.status == par.status);
        continue;
      }
      CHECK(to_text(*seq.final) == to_text(*par.final));
    }
  }
}

TEST_CASE("every success is consistent; budgets are respected") {
  Alphabet abc("abc");
  AlphaRegex alpha;
  BlueFringe blue;
  const double timeout = 0.5;
  int successes = 0;
  for (const auto& inst : random_instances(99, 30, abc)) {
    for (const SynthEngine* e : {static_cast<const SynthEngine*>(&alpha), static_cast<const SynthEngine*>(&blue)}) {
      for (Strategy s : kStrategies) {
        for (int which = 0; which < 2; ++which) {
          SplitterKind sp = which == 0 ? SplitterKind{GroundTruthSplitter{inst.target}} : SplitterKind{RunsSplitter{}};
          auto res = synthesize_split(inst.pair, sp, *e, {s}, {timeout, 2'000'000});
          double parts = 0;
          for (double t : res.part_elapsed) parts += t;
          CHECK(parts <= res.total_elapsed + 1e-6 + (s == Strategy::IndependentParallel ? 10 * timeout : 0));
          CHECK(res.total_elapsed <= timeout + 0.2);
          if (res.status != SplitStatus::Success) continue;
          ++successes;
          for (const auto& p : inst.pair.positives) CHECK(oracle::interval_matches(*res.final, p));
          for (const auto& n : inst.pair.negatives) CHECK_FALSE(oracle::interval_matches(*res.final, n));
        }
      }
    }
  }
  CHECK(successes > 100);
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("seq") == Strategy::IndependentSequential);
  CHECK(parse_strategy("par") == Strategy::IndependentParallel);
  CHECK(parse_strategy("prefix-all") == Strategy::PrefixConditionedAll);
  CHECK(strategy_name(Strategy::PrefixConditionedAll) == "prefix-all");
  CHECK_THROWS_AS(parse_strategy("x"), std::invalid_argument);
}
