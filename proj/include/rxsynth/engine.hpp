#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rxsynth/alphabet.hpp"
#include "rxsynth/regex.hpp"

namespace rxsynth {

using Clock = std::chrono::steady_clock;

/// Fixed point in time after which work should stop. Immutable, so one
/// deadline can be shared by concurrent tasks.
class Deadline {
 public:
  explicit Deadline(double seconds)
      : at_(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))) {}
  explicit Deadline(Clock::time_point at) : at_(at) {}

  bool expired() const { return Clock::now() >= at_; }
  double remaining() const { return std::chrono::duration<double>(at_ - Clock::now()).count(); }
  Clock::time_point at() const { return at_; }

 private:
  Clock::time_point at_;
};

struct SynthesisBudget {
  double timeout = 3.0;  // seconds
  std::size_t max_states = 2'000'000;
};

/// Find R with P ⊆ L(R) and L(prefix · R · suffix) ∩ N = ∅. With the default
/// ε context this is plain consistency with (P, N).
struct SynthesisProblem {
  Alphabet alphabet;
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
  Regex prefix = Regex::epsilon();
  Regex suffix = Regex::epsilon();
};

enum class SynthStatus { Success, Timeout, Unsat };

struct SynthOutcome {
  SynthStatus status = SynthStatus::Timeout;
  std::optional<Regex> regex;
  std::size_t states = 0;  // engine-specific work counter
};

/// Checks a candidate against a problem with the match engine.
bool accepts_candidate(const SynthesisProblem& problem, const Regex& candidate);

class SynthEngine {
 public:
  virtual ~SynthEngine() = default;
  virtual std::string name() const = 0;
  /// Must return by the deadline (up to one loop iteration of slack). Safe
  /// to call concurrently on one engine object.
  virtual SynthOutcome synthesize(const SynthesisProblem& problem, const Deadline& deadline,
                                  std::size_t max_states) const = 0;
};

}  // namespace rxsynth
