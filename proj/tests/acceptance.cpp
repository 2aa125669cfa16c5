// Acceptance gate: one pass/fail line per criterion.
//
//   acceptance <criterion>...   or   acceptance all
//
// Exit status is 0 iff every requested criterion passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rxsynth/alpharegex.hpp"
#include "rxsynth/automaton.hpp"
#include "rxsynth/benchmark.hpp"
#include "rxsynth/bluefringe.hpp"
#include "rxsynth/error.hpp"
#include "rxsynth/language.hpp"
#include "rxsynth/matcher.hpp"
#include "support/cost_oracle.hpp"
#include "support/oracles.hpp"

using namespace rxsynth;

namespace {

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

using Strings = std::vector<std::string>;

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Pinned tolerances.
constexpr double kCounterexampleSeconds = 1.0;
constexpr std::size_t kConsistencyInstances = 500;
constexpr double kConsistencyTimeout = 0.1;
constexpr int kMinimalityInstances = 50;
constexpr int kMinimalityMaxCost = 9;
constexpr int kMinimalityMinCost = 3;
constexpr int kMinimalityPerCost = 10;
constexpr int kRoundTripDfas = 100;
constexpr std::size_t kTrendInstances = 200;
constexpr double kTrendTimeout = 3.0;
constexpr double kTrendMarginPoints = 10.0;

Verdict golden_split() {
  Alphabet abcd("abcd");
  struct Case {
    const char* regex;
    const char* string;
    const char* labels;
  };
  const Case cases[] = {{"a*b*c*.*", "aabbccabca", "1122330000"}, {"a*b*c*.*", "abcbbc", "123000"},
                        {"a*b*c*.*", "bbbcabb", "2223000"},       {"a*b*c*.*", "aabbbc", "112223"},
                        {"a*.*", "abbccdd", "1000000"},           {"a*b*c*d*", "abbccdd", "1223344"}};
  int ok = 0;
  std::string bad;
  for (const auto& c : cases) {
    auto got = ground_truth_labels(parse(c.regex, abcd), c.string).labels;
    if (got == c.labels) {
      ++ok;
    } else {
      bad += std::string(" ") + c.string + "->" + got;
    }
  }
  return {"golden-split", ok == 6, fmt("%d/6 exact", ok) + bad};
}

Verdict counterexample() {
  Alphabet ab("ab");
  ExamplePair pair{ab, {"abbaaa", "abaaa", "aaa"}, {"aaaa"}};
  AlphaRegex engine;
  auto start = Clock::now();
  auto res = synthesize_split(pair, RunsSplitter{}, engine, {}, {3.0, 2'000'000});
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  // the only available split forces the negative into the language
  bool pass = res.status == SplitStatus::SplitFailure && res.detail.find("aaaa") != std::string::npos &&
              secs < kCounterexampleSeconds;
  const char* status = res.status == SplitStatus::SplitFailure ? "split-failure"
                       : res.status == SplitStatus::Timeout    ? "timeout"
                                                                : "success";
  return {"counterexample", pass, fmt("%s in %.3fs: ", status, secs) + res.detail};
}

// Independent check of a reported success: interval DP membership, plus the
// exhaustive language slice when it is small and the DFA complement otherwise.
bool independently_consistent(const Regex& r, const ExamplePair& train, int max_len) {
  for (const auto& p : train.positives)
    if (!oracle::interval_matches(r, p)) return false;
  for (const auto& n : train.negatives)
    if (oracle::interval_matches(r, n)) return false;
  double slice = 0, power = 1;
  for (int k = 0; k <= max_len; ++k, power *= static_cast<double>(train.alphabet.size())) slice += power;
  if (slice <= 5000) {
    Language lang = enumerate_language(r, train.alphabet, max_len);
    for (const auto& p : train.positives)
      if (!lang.contains(p)) return false;
    for (const auto& n : train.negatives)
      if (lang.contains(n)) return false;
    return true;
  }
  Dfa rejected = complement(compile_dfa(r, train.alphabet));
  for (const auto& p : train.positives)
    if (rejected.accepts(p)) return false;
  for (const auto& n : train.negatives)
    if (!rejected.accepts(n)) return false;
  return true;
}

Verdict engine_consistency() {
  const int max_len = 10;
  InstanceConfig cfg;
  cfg.max_len = max_len;
  cfg.seed = 2024;
  std::vector<BenchmarkInstance> instances;
  const std::size_t sizes[] = {2, 4, 6, 8, 10};
  for (std::uint64_t round = 0; instances.size() < kConsistencyInstances; ++round) {
    for (std::size_t k : sizes) {
      cfg.seed = derive_seed(2024, round * 16 + k);
      auto set = make_instances(gen_random_regexes(40, k, cfg.seed), Alphabet::digits(k), cfg);
      for (auto& inst : set.instances) {
        if (instances.size() == kConsistencyInstances) break;
        inst.index = instances.size();
        instances.push_back(std::move(inst));
      }
    }
  }
  std::size_t checked = 0, wrong = 0, runs = 0;
  std::string first_bad;
  for (const std::string engine : {"alpharegex", "bluefringe"}) {
    std::vector<RunConfig> configs;
    RunConfig vanilla;
    vanilla.engine = engine;
    vanilla.timeout = kConsistencyTimeout;
    configs.push_back(vanilla);
    for (Strategy s : {Strategy::IndependentSequential, Strategy::IndependentParallel, Strategy::PrefixConditionedAll})
      for (const std::string splitter : {"gt", "runs"}) {
        RunConfig c = vanilla;
        c.mode = "split";
        c.strategy = s;
        c.splitter = splitter;
        configs.push_back(c);
      }
    for (const auto& c : configs) {
      RunReport rep = run_benchmark(instances, c);
      ++runs;
      for (const auto& row : rep.rows) {
        if (row.status == "invalid") {
          ++wrong;
          if (first_bad.empty()) first_bad = " harness rejected " + row.target;
        }
        if (!row.success()) continue;
        ++checked;
        const auto& inst = instances[row.instance];
        if (!independently_consistent(parse(*row.regex, inst.train.alphabet), inst.train, max_len)) {
          ++wrong;
          if (first_bad.empty()) first_bad = " " + row.target + " -> " + *row.regex;
        }
      }
    }
  }
  bool pass = instances.size() >= kConsistencyInstances && wrong == 0 && checked > 0;
  return {"engine-consistency", pass,
          fmt("%zu instances, %zu configurations, %zu successes re-verified, %zu inconsistent", instances.size(), runs,
              checked, wrong) +
              first_bad};
}

std::string histogram(const std::map<int, int>& counts) {
  std::string out;
  for (const auto& [k, n] : counts) out += " " + std::to_string(k) + "x" + std::to_string(n);
  return out;
}

Verdict alpharegex_minimality() {
  Rng rng(77);
  Alphabet bin("01");
  AlphaRegex engine;
  int tested = 0, equal = 0;
  std::map<int, int> costs;
  std::string bad;
  for (int i = 0; tested < kMinimalityInstances && i < 200000; ++i) {
    Regex target = simplify(oracle::random_regex(rng, bin, 8, false));
    Strings P, N;
    try {
      P = gen_positives(target, bin, 6, 7, rng());
      N = gen_negatives_symbol_perturb(target, bin, P, 6, rng());
    } catch (const GenerationError&) {
      continue;
    }
    auto best = oracle::CostOracle(bin, P, N).min_cost(kMinimalityMaxCost);
    // spread the sample over costs so it is not dominated by trivial answers
    if (!best || *best < kMinimalityMinCost || costs[*best] >= kMinimalityPerCost) continue;
    ++tested;
    ++costs[*best];
    auto out = engine.synthesize({bin, P, N}, Deadline(60.0), 50'000'000);
    if (out.status == SynthStatus::Success && cost(*out.regex) == *best) {
      ++equal;
    } else if (bad.empty()) {
      bad = " first miss: target " + to_text(target) + " oracle cost " + std::to_string(*best);
    }
  }
  return {"alpharegex-minimality", tested == kMinimalityInstances && equal == tested,
          fmt("%d/%d instances at brute-force minimal cost; costs", equal, tested) + histogram(costs) + bad};
}

Dfa random_dfa(Rng& rng, const Alphabet& sigma, std::size_t max_states) {
  Dfa d(sigma);
  std::size_t n = 1 + uniform_index(rng, max_states);
  for (std::size_t i = 0; i < n; ++i) d.add_state(coin(rng));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < sigma.size(); ++a)
      if (uniform_index(rng, 5) != 0) d.set_next(static_cast<int>(i), a, static_cast<int>(uniform_index(rng, n)));
  return d;
}

Verdict bluefringe_identification() {
  Alphabet ab("ab");
  Regex target = parse("(aa)*", ab);
  ExamplePair pair{ab, {}, {}};
  for (const auto& s : oracle::all_strings(ab, 8)) (matches(target, s) ? pair.positives : pair.negatives).push_back(s);
  auto d = run_bluefringe(pair);
  bool identified = d && equivalent(*d, compile_dfa(target, ab));

  Rng rng(31);
  int round_trips = 0;
  for (int i = 0; i < kRoundTripDfas; ++i) {
    Alphabet sigma(std::string("abc").substr(0, 1 + uniform_index(rng, 3)));
    Dfa dfa = random_dfa(rng, sigma, 6);
    if (equivalent(compile_dfa(dfa_to_regex(dfa), sigma), dfa)) ++round_trips;
  }
  return {"bluefringe-identification", identified && round_trips == kRoundTripDfas,
          std::string("(aa)* ") + (identified ? "identified" : "NOT identified") +
              fmt(", dfa_to_regex round-trips %d/%d", round_trips, kRoundTripDfas)};
}

std::vector<Verdict> trend_and_ordering() {
  InstanceConfig cfg;
  cfg.max_len = 10;
  cfg.seed = 8;
  std::vector<BenchmarkInstance> instances;
  for (std::uint64_t batch = 0; instances.size() < kTrendInstances; ++batch) {
    auto set = make_instances(gen_random_regexes(500, 10, derive_seed(7, batch)), Alphabet::digits(10), cfg);
    for (auto& inst : set.instances) {
      if (instances.size() == kTrendInstances) break;
      inst.index = instances.size();
      instances.push_back(std::move(inst));
    }
  }
  RunConfig vanilla;
  vanilla.timeout = kTrendTimeout;
  RunConfig seq = vanilla;
  seq.mode = "split";
  RunConfig prefix = seq;
  prefix.strategy = Strategy::PrefixConditionedAll;
  Aggregate v = run_benchmark(instances, vanilla).summary;
  Aggregate s = run_benchmark(instances, seq).summary;
  Aggregate p = run_benchmark(instances, prefix).summary;
  auto line = [](const char* name, const Aggregate& g) {
    return fmt(" %s succ=%.1f acc=%.2f full=%.1f", name, g.success_rate, g.mean_acc, g.full_ratio);
  };
  Verdict trend{"split-speedup-trend", s.success_rate - v.success_rate >= kTrendMarginPoints && s.mean_acc > v.mean_acc,
                fmt("%zu instances;", instances.size()) + line("vanilla", v) + ";" + line("gt-seq", s)};
  Verdict order{"strategy-ordering", s.success_rate >= p.success_rate,
                line("gt-seq", s) + ";" + line("gt-prefix-all", p)};
  return {trend, order};
}

Verdict metric_suite() {
  int failed = 0, total = 0;
  auto expect = [&](bool ok) {
    ++total;
    if (!ok) ++failed;
  };
  Alphabet ab("ab");
  Strings P{"a", "aa", "aaa", "aaaa", "aaaaa", "aaaaaa", "aaaaaaa", "aaaaaaaa", "aaaaaaaaa", "aaaaaaaaaa"};
  Strings N{"b", "bb", "ab", "ba", "bab", "abb", "bba", "aab", "baa", "bbb"};
  expect(sem_acc(parse("aa*", ab), P, N) == 100.0);
  expect(sem_acc(parse(".*", ab), P, N) == 0.0);
  expect(sem_acc(parse("aa*+b+bb", ab), P, N) == 80.0);
  expect(sem_acc(Confusion{10, 8, 0, 2}) == 80.0);
  expect(fully_accurate(parse("aa*", ab), P, N));
  expect(!fully_accurate(parse("aa*+b", ab), P, N));
  expect(!fully_accurate(parse(".*", ab), P, {"b"}));

  Rng rng(3);
  Alphabet abc("abc");
  auto words = oracle::all_strings(abc, 4);
  for (int i = 0; i < 200; ++i) {
    Regex r = oracle::random_regex(rng, abc, 8, false);
    Strings p, n;
    for (int k = 0; k < 5; ++k) {
      p.push_back(words[uniform_index(rng, words.size())]);
      n.push_back(words[uniform_index(rng, words.size())]);
    }
    double acc = sem_acc(r, p, n);
    expect(acc >= -100.0 && acc <= 100.0);
    expect((acc == 100.0) == fully_accurate(r, p, n));
    expect(sem_acc(dfa_to_regex(complement(compile_dfa(r, abc))), p, n) == -acc);
  }

  auto row = [](std::size_t i, const char* status, double t) {
    RunRow r;
    r.instance = i;
    r.status = status;
    r.elapsed = t;
    if (r.success()) r.sem_acc = 100.0;
    r.fully_accurate = r.success();
    return r;
  };
  std::vector<RunRow> a{row(0, "success", 0.2), row(1, "success", 2.0), row(2, "timeout", 3.0),
                        row(3, "timeout", 3.0), row(4, "success", 1.0)};
  std::vector<RunRow> b{row(0, "success", 0.4), row(1, "success", 0.5), row(2, "success", 2.9),
                        row(3, "unsat", 0.1), row(4, "success", 1.0)};
  Comparison c = compare(a, b, 3.0, 3.0);
  expect(c.contested == 4 && c.joint == 3);
  expect(c.win_a == 100.0 * 1.5 / 4 && c.win_b == 100.0 * 2.5 / 4);
  expect(std::abs(c.runtime_b - (0.4 + 0.5 + 2.9 + 3.0 + 1.0) / 5) < 1e-12);
  expect(std::abs(c.joint_runtime_a - (0.2 + 2.0 + 1.0) / 3) < 1e-12);
  Aggregate g = aggregate(b, 3.0);
  expect(g.success_rate == 80.0 && g.mean_acc == 80.0 && g.full_ratio == 80.0);
  expect(std::abs(g.mean_runtime - (0.4 + 0.5 + 2.9 + 3.0 + 1.0) / 5) < 1e-12);
  return {"metric-suite", failed == 0, fmt("%d/%d checks", total - failed, total)};
}

}  // namespace

int main(int argc, char** argv) {
  std::map<std::string, std::function<std::vector<Verdict>()>> criteria{
      {"golden", [] { return std::vector<Verdict>{golden_split()}; }},
      {"counterexample", [] { return std::vector<Verdict>{counterexample()}; }},
      {"consistency", [] { return std::vector<Verdict>{engine_consistency()}; }},
      {"minimality", [] { return std::vector<Verdict>{alpharegex_minimality()}; }},
      {"bluefringe", [] { return std::vector<Verdict>{bluefringe_identification()}; }},
      {"trend", trend_and_ordering},
      {"metrics", [] { return std::vector<Verdict>{metric_suite()}; }},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  if (wanted.empty() || wanted == std::vector<std::string>{"all"}) {
    wanted.clear();
    for (const auto& [name, _] : criteria) wanted.push_back(name);
  }
  bool all_pass = true;
  for (const auto& name : wanted) {
    auto it = criteria.find(name);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion '%s'\n", name.c_str());
      return 2;
    }
    auto start = Clock::now();
    auto verdicts = it->second();
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    for (const auto& v : verdicts) {
      std::printf("%s %s (%.1fs): %s\n", v.pass ? "PASS" : "FAIL", v.name.c_str(), secs, v.detail.c_str());
      all_pass = all_pass && v.pass;
    }
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
