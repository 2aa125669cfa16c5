#include <doctest.h>

#include "rxsynth/bluefringe.hpp"
#include "rxsynth/error.hpp"
#include "rxsynth/language.hpp"
#include "rxsynth/matcher.hpp"
#include "support/oracles.hpp"

using namespace rxsynth;

namespace {

Dfa random_dfa(Rng& rng, const Alphabet& sigma, std::size_t max_states) {
  Dfa d(sigma);
  std::size_t n = 1 + uniform_index(rng, max_states);
  for (std::size_t i = 0; i < n; ++i) d.add_state(coin(rng));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < sigma.size(); ++a)
      if (uniform_index(rng, 5) != 0) d.set_next(static_cast<int>(i), a, static_cast<int>(uniform_index(rng, n)));
  return d;
}

std::size_t distinct_prefixes(const std::vector<std::string>& strings) {
  std::set<std::string> prefixes;
  for (const auto& s : strings)
    for (std::size_t i = 0; i <= s.size(); ++i) prefixes.insert(s.substr(0, i));
  return prefixes.size();
}

}  // namespace

TEST_CASE("build_apta") {
  Alphabet ab("ab");
  Apta t = build_apta({ab, {"a"}, {"b"}});
  REQUIRE(t.size() == 3);
  CHECK(t.label[0] == StateLabel::Unknown);
  CHECK(t.label[static_cast<std::size_t>(t.next[0][0])] == StateLabel::Accept);
  CHECK(t.label[static_cast<std::size_t>(t.next[0][1])] == StateLabel::Reject);
  CHECK(build_apta({ab, {""}, {}}).label[0] == StateLabel::Accept);
  CHECK_THROWS_AS(build_apta({ab, {"ab"}, {"ab"}}), ConflictError);

  // numbering is breadth-first and independent of example order
  Apta x = build_apta({ab, {"bb", "a"}, {"ab"}});
  Apta y = build_apta({ab, {"a", "bb"}, {"ab"}});
  CHECK(x.next == y.next);
  CHECK(x.label == y.label);

  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> all;
    std::set<std::string> used;
    ExamplePair pair{ab, {}, {}};
    for (int j = 0; j < 8; ++j) {
      std::string s;
      std::size_t len = uniform_index(rng, 6);
      for (std::size_t c = 0; c < len; ++c) s.push_back(ab.at(uniform_index(rng, 2)));
      if (!used.insert(s).second) continue;
      (coin(rng) ? pair.positives : pair.negatives).push_back(s);
      all.push_back(s);
    }
    CHECK(build_apta(pair).size() == distinct_prefixes(all));
  }
}

TEST_CASE("run_bluefringe: even number of a's") {
  Alphabet a("a");
  auto d = run_bluefringe({a, {"", "aa", "aaaa"}, {"a", "aaa"}});
  REQUIRE(d.has_value());
  CHECK(d->size() == 2);
  CHECK(equivalent(*d, compile_dfa(parse("(aa)*", a), a)));
}

TEST_CASE("run_bluefringe: identifies (aa)* from all strings up to length 8") {
  Alphabet ab("ab");
  Regex target = parse("(aa)*", ab);
  ExamplePair pair{ab, {}, {}};
  for (const auto& s : oracle::all_strings(ab, 8)) (matches(target, s) ? pair.positives : pair.negatives).push_back(s);
  auto d = run_bluefringe(pair);
  REQUIRE(d.has_value());
  CHECK(equivalent(*d, compile_dfa(target, ab)));
}

TEST_CASE("run_bluefringe: consistency and determinism on random samples") {
  Rng rng(12);
  Alphabet abc("abc");
  for (int i = 0; i < 200; ++i) {
    Regex target = simplify(oracle::random_regex(rng, abc, 10, false));
    ExamplePair pair{abc, {}, {}};
    std::set<std::string> used;
    for (int j = 0; j < 20; ++j) {
      std::string s;
      std::size_t len = uniform_index(rng, 7);
      for (std::size_t c = 0; c < len; ++c) s.push_back(abc.at(uniform_index(rng, 3)));
      if (!used.insert(s).second) continue;
      (matches(target, s) ? pair.positives : pair.negatives).push_back(s);
    }
    if (pair.positives.empty()) continue;
    auto d = run_bluefringe(pair);
    REQUIRE(d.has_value());
    for (const auto& p : pair.positives) CHECK(d->accepts(p));
    for (const auto& n : pair.negatives) CHECK_FALSE(d->accepts(n));
    ExamplePair shuffled = pair;
    std::reverse(shuffled.positives.begin(), shuffled.positives.end());
    std::reverse(shuffled.negatives.begin(), shuffled.negatives.end());
    CHECK(to_text(*run_bluefringe(shuffled)) == to_text(*d));
  }
  auto single = run_bluefringe({abc, {"a"}, {}});
  REQUIRE(single.has_value());
  CHECK(single->accepts("a"));
}

TEST_CASE("dfa_to_regex examples") {
  Alphabet a("a");
  Dfa all(a);
  all.add_state(true);
  all.set_next(0, 0, 0);
  Regex r = dfa_to_regex(all);
  CHECK(equivalent(compile_dfa(r, a), all));
  CHECK(to_text(r) == ".*");

  Dfa even = compile_dfa(parse("(aa)*", a), a);
  Regex e = dfa_to_regex(even);
  auto lang = enumerate_language(e, a, 8);
  CHECK(lang.strings == std::set<std::string>{"", "aa", "aaaa", "aaaaaa", "aaaaaaaa"});

  Dfa none(a);
  none.add_state(false);
  CHECK(dfa_to_regex(none) == Regex::empty());
}

TEST_CASE("dfa_to_regex round-trips random automata") {
  Rng rng(30);
  for (int i = 0; i < 300; ++i) {
    Alphabet sigma(std::string("abc").substr(0, 1 + uniform_index(rng, 3)));
    Dfa d = random_dfa(rng, sigma, 8);
    Regex r = dfa_to_regex(d);
    REQUIRE(r.complete());
    auto diff = find_difference(compile_dfa(r, sigma), d);
    CHECK_MESSAGE(!diff.has_value(), to_text(r) << " differs on '" << *diff << "'");
  }
}

TEST_CASE("context_negatives reduces prefix/suffix conditions exactly") {
  Alphabet ab("ab");
  Regex prefix = parse("ab*", ab), suffix = parse("a?", ab);
  std::vector<std::string> N{"aaaa", "abab"};
  auto derived = context_negatives(N, prefix, suffix);
  // every candidate up to length 4: rejecting all derived strings is
  // equivalent to prefix·R·suffix rejecting N, checked per candidate language
  // {v}: R = v
  for (const auto& v : oracle::all_strings(ab, 4)) {
    bool direct = false;
    for (const auto& n : N) direct = direct || matches(Regex::concat(Regex::concat(prefix, Regex::word(v)), suffix), n);
    bool reduced = std::find(derived.begin(), derived.end(), v) != derived.end();
    CHECK(direct == reduced);
  }
  CHECK(context_negatives(N, Regex::epsilon(), Regex::epsilon()) == N);
}

TEST_CASE("BlueFringe engine") {
  BlueFringe engine;
  Alphabet ab("ab");
  auto r = engine.synthesize({ab, {"a", "aa"}, {"b", "ab"}}, Deadline(5.0), 0);
  REQUIRE(r.status == SynthStatus::Success);
  CHECK(matches(*r.regex, "a"));
  CHECK_FALSE(matches(*r.regex, "ab"));

  SynthesisProblem ctx{ab, {"aa", "aaa"}, {"aaaa"}, parse("ab*", ab)};
  CHECK(engine.synthesize(ctx, Deadline(5.0), 0).status == SynthStatus::Unsat);

  SynthesisProblem ok{ab, {"aa", "ab"}, {"aaaa"}, parse("ab*", ab)};
  auto s = engine.synthesize(ok, Deadline(5.0), 0);
  REQUIRE(s.status == SynthStatus::Success);
  CHECK(accepts_candidate(ok, *s.regex));
}
