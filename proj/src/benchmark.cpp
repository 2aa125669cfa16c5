#include "rxsynth/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <variant>

#include "rxsynth/alpharegex.hpp"
#include "rxsynth/bluefringe.hpp"
#include "rxsynth/error.hpp"
#include "rxsynth/matcher.hpp"
#include "rxsynth/random.hpp"

namespace rxsynth {

using nlohmann::json;

namespace {

constexpr int kMaxDepth = 8;
constexpr std::size_t kMaxSize = 25;

enum class Grow { Literal, Concat, Union, Star, Question, Wildcard };

struct Weighted {
  Grow kind;
  double weight;
};

constexpr Weighted kWeights[] = {{Grow::Literal, .35}, {Grow::Concat, .25},   {Grow::Union, .15},
                                 {Grow::Star, .12},    {Grow::Question, .08}, {Grow::Wildcard, .05}};

// At most `budget` nodes; leaves only at the depth cap.
Regex grow(Rng& rng, const Alphabet& sigma, int depth, std::size_t budget) {
  auto allowed = [&](Grow k) {
    switch (k) {
      case Grow::Literal:
      case Grow::Wildcard: return true;
      case Grow::Star:
      case Grow::Question: return depth < kMaxDepth && budget >= 2;
      default: return depth < kMaxDepth && budget >= 3;
    }
  };
  double total = 0;
  for (const auto& w : kWeights)
    if (allowed(w.kind)) total += w.weight;
  double x = uniform01(rng) * total;
  Grow pick = Grow::Literal;
  for (const auto& w : kWeights) {
    if (!allowed(w.kind)) continue;
    pick = w.kind;
    if (x < w.weight) break;
    x -= w.weight;
  }
  switch (pick) {
    case Grow::Literal: return Regex::literal(sigma.at(uniform_index(rng, sigma.size())));
    case Grow::Wildcard: return Regex::wildcard();
    case Grow::Star: return Regex::star(grow(rng, sigma, depth + 1, budget - 1));
    case Grow::Question: return Regex::question(grow(rng, sigma, depth + 1, budget - 1));
    default: {
      std::size_t left = 1 + uniform_index(rng, budget - 2);
      Regex a = grow(rng, sigma, depth + 1, left);
      Regex b = grow(rng, sigma, depth + 1, budget - 1 - left);
      return pick == Grow::Concat ? Regex::concat(a, b) : Regex::alt(a, b);
    }
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::variant<BenchmarkInstance, std::string> build_instance(std::size_t index, const Regex& target,
                                                            const Alphabet& sigma, const InstanceConfig& config) {
  const std::uint64_t seed = derive_seed(config.seed, index);
  std::vector<std::string> pos, neg;
  try {
    pos = gen_positives(target, sigma, config.count_pos, config.max_len, derive_seed(seed, 0));
  } catch (const GenerationError&) {
    return "fewer than " + std::to_string(config.count_pos) + " distinct positives up to length " +
           std::to_string(config.max_len);
  }
  try {
    neg = config.neg_mode == NegMode::SymbolPerturb
              ? gen_negatives_symbol_perturb(target, sigma, pos, config.count_neg, derive_seed(seed, 1))
              : gen_negatives_regex_perturb(target, sigma, config.count_neg, config.max_len, derive_seed(seed, 1));
  } catch (const GenerationError&) {
    return "could not generate " + std::to_string(config.count_neg) + " negatives";
  }
  BenchmarkInstance inst;
  inst.index = index;
  inst.target = target;
  const auto hp = pos.begin() + config.count_pos / 2, hn = neg.begin() + config.count_neg / 2;
  inst.train = {sigma, {pos.begin(), hp}, {neg.begin(), hn}};
  inst.eval = {sigma, {hp, pos.end()}, {hn, neg.end()}};
  try {
    for (const auto& p : inst.train.positives) inst.labelings.push_back(ground_truth_labels(target, p));
  } catch (const LabelingError& e) {
    return std::string("no ground-truth split: ") + e.what();
  }
  return inst;
}

void add(InstanceSet& set, std::size_t index, const std::string& source,
         std::variant<BenchmarkInstance, std::string> built) {
  if (auto* inst = std::get_if<BenchmarkInstance>(&built)) {
    set.instances.push_back(std::move(*inst));
  } else {
    set.skips.push_back({index, source, std::get<std::string>(built)});
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

std::string skips_path(const std::string& dataset) { return dataset + ".skips.jsonl"; }

json skip_json(const SkippedLine& s) { return {{"line", s.index}, {"source", s.source}, {"reason", s.reason}}; }

SkippedLine skip_from_json(const json& j) {
  return {j.at("line").get<std::size_t>(), j.at("source").get<std::string>(), j.at("reason").get<std::string>()};
}

template <class F>
void for_each_json_line(const std::string& path, F&& f) {
  auto in = open_in(path);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (trim(line).empty()) continue;
    try {
      f(json::parse(line));
    } catch (const json::exception& e) {
      throw SchemaError(path + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw SchemaError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::string status_name(SynthStatus s) {
  switch (s) {
    case SynthStatus::Success: return "success";
    case SynthStatus::Timeout: return "timeout";
    case SynthStatus::Unsat: return "unsat";
  }
  return "error";
}

std::string status_name(SplitStatus s) {
  switch (s) {
    case SplitStatus::Success: return "success";
    case SplitStatus::Timeout: return "timeout";
    case SplitStatus::SplitFailure: return "split-failure";
  }
  return "error";
}

RunRow run_instance(const BenchmarkInstance& inst, const RunConfig& config, const SynthEngine& engine,
                    const std::optional<SplitterKind>& shared_splitter) {
  RunRow row;
  row.instance = inst.index;
  row.target = to_text(inst.target);
  std::optional<Regex> result;
  const auto start = Clock::now();
  try {
    if (config.mode == "vanilla") {
      SynthOutcome out = engine.synthesize({inst.train.alphabet, inst.train.positives, inst.train.negatives},
                                           Deadline(config.timeout), config.max_states);
      row.status = status_name(out.status);
      row.engine_calls = 1;
      result = out.regex;
    } else {
      SplitterKind splitter = shared_splitter ? *shared_splitter : SplitterKind{GroundTruthSplitter{inst.target}};
      auto out = synthesize_split(inst.train, splitter, engine, {config.strategy, config.fallback},
                                  {config.timeout, config.max_states});
      row.status = status_name(out.status);
      row.engine_calls = out.engine_calls;
      row.detail = out.detail;
      if (out.status == SplitStatus::Success) result = out.final;
    }
  } catch (const MissingPredictionError&) {
    throw;
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    row.status = "error";
    row.detail = e.what();
  }
  row.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  if (row.success()) {
    if (!result || !verify_consistency(*result, inst.train)) {
      row.status = "invalid";
      row.detail = "result is inconsistent with the train examples";
    } else {
      row.regex = to_text(*result);
      row.sem_acc = sem_acc(*result, inst.eval.positives, inst.eval.negatives);
      row.fully_accurate = fully_accurate(*result, inst.eval.positives, inst.eval.negatives);
    }
  }
  return row;
}

json config_json(const RunConfig& c) {
  return {{"type", "config"},       {"engine", c.engine},   {"mode", c.mode},
          {"splitter", c.splitter}, {"strategy", strategy_name(c.strategy)},
          {"timeout", c.timeout},   {"jobs", c.jobs},       {"max_states", c.max_states},
          {"fallback", c.fallback}};
}

json aggregate_json(const Aggregate& g) {
  return {{"type", "aggregate"},           {"instances", g.instances},       {"successes", g.successes},
          {"success_rate", g.success_rate}, {"mean_acc", g.mean_acc},         {"full_ratio", g.full_ratio},
          {"mean_runtime", g.mean_runtime}, {"success_runtime", g.success_runtime}};
}

json row_json(const RunRow& r) {
  json j = {{"type", "row"},         {"instance", r.instance},
            {"target", r.target},    {"status", r.status},
            {"elapsed", r.elapsed},  {"regex", nullptr},
            {"sem_acc", nullptr},    {"fully_accurate", r.fully_accurate},
            {"engine_calls", r.engine_calls}, {"detail", r.detail}};
  if (r.regex) j["regex"] = *r.regex;
  if (r.sem_acc) j["sem_acc"] = *r.sem_acc;
  return j;
}

RunRow row_from_json(const json& j) {
  RunRow r;
  r.instance = j.at("instance").get<std::size_t>();
  r.target = j.at("target").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.elapsed = j.at("elapsed").get<double>();
  if (!j.at("regex").is_null()) r.regex = j["regex"].get<std::string>();
  if (!j.at("sem_acc").is_null()) r.sem_acc = j["sem_acc"].get<double>();
  r.fully_accurate = j.at("fully_accurate").get<bool>();
  r.engine_calls = j.at("engine_calls").get<int>();
  r.detail = j.at("detail").get<std::string>();
  return r;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::vector<Regex> gen_random_regexes(std::size_t count, std::size_t alphabet_size, std::uint64_t seed) {
  Alphabet sigma = Alphabet::digits(alphabet_size);
  std::vector<Regex> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    out.push_back(simplify(grow(rng, sigma, 1, kMaxSize)));
  }
  return out;
}

std::string format_regex_line(const Regex& r, const Alphabet& alphabet) {
  return to_text(r) + "\t" + alphabet.symbols();
}

NegMode parse_neg_mode(const std::string& name) {
  if (name == "symbol") return NegMode::SymbolPerturb;
  if (name == "regex") return NegMode::RegexPerturb;
  throw std::invalid_argument("unknown negative mode '" + name + "'");
}

InstanceSet make_instances(const std::vector<std::string>& lines, const InstanceConfig& config) {
  InstanceSet set;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::string line = trim(lines[k]);
    if (line.empty()) continue;
    if (config.preprocess) {
      RawRegexRecord rec = preprocess_raw(line);
      if (!rec.regex) {
        set.skips.push_back({k, line, "rejected: " + rec.rejection});
        continue;
      }
      add(set, k, line, build_instance(k, *rec.regex, rec.alphabet, config));
      continue;
    }
    try {
      auto tab = lines[k].find('\t');
      std::string text = trim(lines[k].substr(0, tab));
      Alphabet sigma;
      if (tab != std::string::npos) {
        sigma = Alphabet(trim(lines[k].substr(tab + 1)));
      } else {
        // parse with every legal symbol first to learn the literals
        std::string all;
        for (int c = 33; c < 127; ++c)
          if (Alphabet::is_valid_symbol(static_cast<char>(c))) all.push_back(static_cast<char>(c));
        sigma = Alphabet(literal_symbols(parse(text, Alphabet(all))));
      }
      add(set, k, line, build_instance(k, parse(text, sigma), sigma, config));
    } catch (const Error& e) {
      set.skips.push_back({k, line, std::string("unparseable: ") + e.what()});
    }
  }
  return set;
}

InstanceSet make_instances(const std::vector<Regex>& targets, const Alphabet& alphabet,
                           const InstanceConfig& config) {
  InstanceSet set;
  for (std::size_t k = 0; k < targets.size(); ++k)
    add(set, k, format_regex_line(targets[k], alphabet), build_instance(k, targets[k], alphabet, config));
  return set;
}

std::vector<std::string> read_lines(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void write_dataset(const std::string& path, const InstanceSet& set) {
  auto out = open_out(path);
  for (const auto& inst : set.instances) {
    json alphabet = json::array();
    for (char c : inst.train.alphabet.symbols()) alphabet.push_back(std::string(1, c));
    json labels = json::array();
    for (const auto& l : inst.labelings) labels.push_back(l.labels);
    json j = {{"regex", to_text(inst.target)},      {"alphabet", alphabet},
              {"pos_train", inst.train.positives}, {"neg_train", inst.train.negatives},
              {"pos_eval", inst.eval.positives},   {"neg_eval", inst.eval.negatives},
              {"labels", labels}};
    out << j.dump() << '\n';
  }
  auto skips = open_out(skips_path(path));
  for (const auto& s : set.skips) skips << skip_json(s).dump() << '\n';
}

InstanceSet read_dataset(const std::string& path) {
  InstanceSet set;
  for_each_json_line(path, [&](const json& j) {
    std::string symbols;
    for (const auto& s : j.at("alphabet")) {
      auto sym = s.get<std::string>();
      if (sym.size() != 1) throw SchemaError("alphabet entries must be single characters");
      symbols += sym;
    }
    BenchmarkInstance inst;
    inst.index = set.instances.size();
    Alphabet sigma(symbols);
    inst.target = parse(j.at("regex").get<std::string>(), sigma);
    auto strings = [&](const char* key) {
      auto v = j.at(key).get<std::vector<std::string>>();
      for (const auto& s : v)
        if (!sigma.covers(s)) throw SchemaError(std::string(key) + " has a string outside the alphabet");
      return v;
    };
    inst.train = {sigma, strings("pos_train"), strings("neg_train")};
    inst.eval = {sigma, strings("pos_eval"), strings("neg_eval")};
    auto labels = j.at("labels").get<std::vector<std::string>>();
    if (labels.size() != inst.train.positives.size()) throw SchemaError("labels must align with pos_train");
    for (std::size_t k = 0; k < labels.size(); ++k) {
      SplitLabeling l{inst.train.positives[k], labels[k]};
      try {
        validate_labeling(l);
      } catch (const LabelingError& e) {
        throw SchemaError(e.what());
      }
      inst.labelings.push_back(l);
    }
    set.instances.push_back(std::move(inst));
  });
  std::ifstream probe(skips_path(path));
  if (probe) for_each_json_line(skips_path(path), [&](const json& j) { set.skips.push_back(skip_from_json(j)); });
  return set;
}

std::unique_ptr<SynthEngine> make_engine(const std::string& name) {
  if (name == "alpharegex") return std::make_unique<AlphaRegex>();
  if (name == "bluefringe") return std::make_unique<BlueFringe>();
  throw std::invalid_argument("unknown engine '" + name + "'");
}

bool verify_consistency(const Regex& r, const ExamplePair& pair) {
  if (!r.complete()) return false;
  PositionAutomaton a(r);
  for (const auto& p : pair.positives)
    if (!a.matches(p) || !matches_by_intervals(r, p)) return false;
  for (const auto& n : pair.negatives)
    if (a.matches(n) || matches_by_intervals(r, n)) return false;
  return true;
}

RunReport run_benchmark(const std::vector<BenchmarkInstance>& instances, const RunConfig& config) {
  if (config.mode != "vanilla" && config.mode != "split")
    throw std::invalid_argument("unknown mode '" + config.mode + "'");
  auto engine = make_engine(config.engine);
  std::optional<SplitterKind> splitter;
  if (config.mode == "split" && config.splitter != "gt") {
    if (config.splitter == "runs") {
      splitter = RunsSplitter{};
    } else if (config.splitter.rfind("file:", 0) == 0) {
      splitter = file_splitter(config.splitter.substr(5));
    } else {
      throw std::invalid_argument("unknown splitter '" + config.splitter + "'");
    }
  }

  RunReport report;
  report.config = config;
  report.rows.resize(instances.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < instances.size();) {
      try {
        report.rows[i] = run_instance(instances[i], config, *engine, splitter);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = instances.size();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, instances.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  report.summary = aggregate(report.rows, config.timeout);
  return report;
}

void write_report(const std::string& path, const RunReport& report) {
  auto out = open_out(path);
  out << config_json(report.config).dump() << '\n';
  for (const auto& r : report.rows) out << row_json(r).dump() << '\n';
  for (const auto& s : report.skips) {
    json j = skip_json(s);
    j["type"] = "skip";
    out << j.dump() << '\n';
  }
  out << aggregate_json(report.summary).dump() << '\n';
  auto csv = open_out(path + ".csv");
  csv << csv_header() << '\n' << csv_row(report) << '\n';
}

RunReport read_report(const std::string& path) {
  RunReport report;
  std::optional<Aggregate> stored;
  bool have_config = false;
  for_each_json_line(path, [&](const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "config") {
      auto& c = report.config;
      c.engine = j.at("engine").get<std::string>();
      c.mode = j.at("mode").get<std::string>();
      c.splitter = j.at("splitter").get<std::string>();
      c.strategy = parse_strategy(j.at("strategy").get<std::string>());
      c.timeout = j.at("timeout").get<double>();
      c.jobs = j.at("jobs").get<std::size_t>();
      c.max_states = j.at("max_states").get<std::size_t>();
      c.fallback = j.at("fallback").get<bool>();
      have_config = true;
    } else if (type == "row") {
      report.rows.push_back(row_from_json(j));
    } else if (type == "skip") {
      report.skips.push_back(skip_from_json(j));
    } else if (type == "aggregate") {
      Aggregate g;
      g.instances = j.at("instances").get<std::size_t>();
      g.successes = j.at("successes").get<std::size_t>();
      g.success_rate = j.at("success_rate").get<double>();
      g.mean_acc = j.at("mean_acc").get<double>();
      g.full_ratio = j.at("full_ratio").get<double>();
      g.mean_runtime = j.at("mean_runtime").get<double>();
      g.success_runtime = j.at("success_runtime").get<double>();
      stored = g;
    } else {
      throw SchemaError("unknown record type '" + type + "'");
    }
  });
  if (!have_config) throw SchemaError(path + ": missing config record");
  if (!stored) throw SchemaError(path + ": missing aggregate record");
  report.summary = aggregate(report.rows, report.config.timeout);
  if (!(report.summary == *stored)) throw SchemaError(path + ": aggregate does not match the rows");
  return report;
}

std::string csv_header() {
  return "engine,mode,splitter,strategy,timeout,instances,skipped,succ,acc,full,runtime,success_runtime";
}

std::string csv_row(const RunReport& r) {
  const auto& c = r.config;
  const auto& g = r.summary;
  const bool split = c.mode == "split";
  return c.engine + "," + c.mode + "," + (split ? c.splitter : "-") + "," + (split ? strategy_name(c.strategy) : "-") +
         "," + fixed(c.timeout, 2) + "," + std::to_string(g.instances) + "," + std::to_string(r.skips.size()) + "," +
         fixed(g.success_rate, 2) + "," + fixed(g.mean_acc, 2) + "," + fixed(g.full_ratio, 2) + "," +
         fixed(g.mean_runtime, 4) + "," + fixed(g.success_runtime, 4);
}

}  // namespace rxsynth
