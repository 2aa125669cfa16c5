#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rxsynth/automaton.hpp"
#include "rxsynth/benchmark.hpp"
#include "rxsynth/bluefringe.hpp"
#include "rxsynth/error.hpp"

using namespace rxsynth;

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.push_back("");
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

void print_comparison(const RunReport& a, const RunReport& b, const std::string& name_a, const std::string& name_b) {
  Comparison c = compare(a.rows, b.rows, a.config.timeout, b.config.timeout);
  std::cout << "\n" << name_a << " vs " << name_b << "\n"
            << "  solved by at least one: " << c.contested << " (only first " << c.only_a << ", only second "
            << c.only_b << ", both " << c.joint << ")\n"
            << "  win ratio %: " << c.win_a << " / " << c.win_b << "\n"
            << "  runtime s (failures count as the timeout): " << c.runtime_a << " / " << c.runtime_b << "\n"
            << "  runtime s over joint successes: " << c.joint_runtime_a << " / " << c.joint_runtime_b << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regex synthesis from examples"};
  app.require_subcommand(1);

  std::size_t count = 100, alphabet_size = 10;
  std::uint64_t seed = 0;
  std::string out_path;
  auto* gen = app.add_subcommand("gen-random", "Write random target regexes, one per line");
  gen->add_option("--count", count, "Number of regexes")->capture_default_str();
  gen->add_option("--alphabet-size", alphabet_size, "Digits 0..n-1, n in 2..10")
      ->check(CLI::Range(1, 10))
      ->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("-o,--output", out_path)->required();

  std::string regex_path, neg_mode = "symbol";
  InstanceConfig icfg;
  auto* make = app.add_subcommand("make-dataset", "Generate train/eval examples for a regex file");
  make->add_option("--regexes", regex_path, "Regex file")->required();
  make->add_option("--max-len", icfg.max_len)->capture_default_str();
  make->add_option("--neg-mode", neg_mode, "symbol or regex")
      ->check(CLI::IsMember({"symbol", "regex"}))
      ->capture_default_str();
  make->add_option("--count-pos", icfg.count_pos)->capture_default_str();
  make->add_option("--count-neg", icfg.count_neg)->capture_default_str();
  make->add_option("--seed", icfg.seed)->capture_default_str();
  make->add_flag("--preprocess", icfg.preprocess, "Lines are practical regexes to convert");
  make->add_option("-o,--output", out_path)->required();

  std::string dataset_path, strategy = "seq";
  RunConfig rcfg;
  auto* run = app.add_subcommand("run", "Run a benchmark over a dataset");
  run->add_option("--dataset", dataset_path)->required();
  run->add_option("--engine", rcfg.engine)->check(CLI::IsMember({"alpharegex", "bluefringe"}))->capture_default_str();
  run->add_option("--mode", rcfg.mode)->check(CLI::IsMember({"vanilla", "split"}))->capture_default_str();
  run->add_option("--splitter", rcfg.splitter, "gt, runs or file:PATH")->capture_default_str();
  run->add_option("--strategy", strategy, "seq, par or prefix-all")
      ->check(CLI::IsMember({"seq", "par", "prefix-all"}))
      ->capture_default_str();
  run->add_option("--timeout", rcfg.timeout, "Seconds per instance")->capture_default_str();
  run->add_option("--jobs", rcfg.jobs)->capture_default_str();
  run->add_option("--max-states", rcfg.max_states)->capture_default_str();
  run->add_flag("--fallback", rcfg.fallback, "Retry the whole problem after a split failure");
  run->add_option("-o,--output", out_path)->required();

  std::vector<std::string> report_paths;
  auto* score = app.add_subcommand("score", "Check reports and print their aggregates");
  score->add_option("--report", report_paths, "Report file; repeat to compare against the first")->required();

  std::string sigma, pos, neg, engine = "alpharegex";
  double timeout = 3.0;
  bool dump_dfa = false;
  auto* solve = app.add_subcommand("solve", "Synthesize one regex from comma-separated examples");
  solve->add_option("--alphabet", sigma)->required();
  solve->add_option("--pos", pos)->required();
  solve->add_option("--neg", neg);
  solve->add_option("--engine", engine)->check(CLI::IsMember({"alpharegex", "bluefringe"}))->capture_default_str();
  solve->add_option("--timeout", timeout)->capture_default_str();
  solve->add_flag("--dump-dfa", dump_dfa, "Print the DFA of the result");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      auto out = open_out(out_path);
      Alphabet digits = Alphabet::digits(alphabet_size);
      for (const auto& r : gen_random_regexes(count, alphabet_size, seed)) out << format_regex_line(r, digits) << '\n';
    } else if (*make) {
      icfg.neg_mode = parse_neg_mode(neg_mode);
      InstanceSet set = make_instances(read_lines(regex_path), icfg);
      write_dataset(out_path, set);
      std::cerr << set.instances.size() << " instances, " << set.skips.size() << " skipped\n";
    } else if (*run) {
      rcfg.strategy = parse_strategy(strategy);
      InstanceSet set = read_dataset(dataset_path);
      RunReport report = run_benchmark(set.instances, rcfg);
      report.skips = set.skips;
      write_report(out_path, report);
      std::cout << csv_header() << '\n' << csv_row(report) << '\n';
    } else if (*score) {
      std::vector<RunReport> reports;
      for (const auto& p : report_paths) reports.push_back(read_report(p));
      std::cout << csv_header() << '\n';
      for (const auto& r : reports) std::cout << csv_row(r) << '\n';
      for (std::size_t k = 1; k < reports.size(); ++k)
        print_comparison(reports[0], reports[k], report_paths[0], report_paths[k]);
    } else if (*solve) {
      Alphabet alphabet(sigma);
      SynthesisProblem problem{alphabet, split_commas(pos), neg.empty() ? std::vector<std::string>{} : split_commas(neg)};
      auto e = make_engine(engine);
      SynthOutcome out = e->synthesize(problem, Deadline(timeout), 2'000'000);
      if (out.status != SynthStatus::Success) {
        std::cout << (out.status == SynthStatus::Timeout ? "timeout" : "unsat") << '\n';
        return 0;
      }
      std::cout << to_text(*out.regex) << '\n';
      if (dump_dfa) {
        std::optional<Dfa> d;
        if (engine == "bluefringe") d = run_bluefringe({alphabet, problem.positives, problem.negatives});
        if (!d) d = compile_dfa(*out.regex, alphabet);
        std::cout << to_text(*d);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
