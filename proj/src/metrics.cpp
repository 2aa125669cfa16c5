#include "rxsynth/metrics.hpp"

#include <map>
#include <stdexcept>

#include "rxsynth/matcher.hpp"

namespace rxsynth {

Confusion classify(const Regex& r, const std::vector<std::string>& positives,
                   const std::vector<std::string>& negatives) {
  PositionAutomaton a(r);
  Confusion c;
  for (const auto& p : positives) ++(a.matches(p) ? c.tp : c.fp);
  for (const auto& n : negatives) ++(a.matches(n) ? c.fn : c.tn);
  return c;
}

double sem_acc(const Confusion& c) {
  const std::size_t total = c.tp + c.tn + c.fp + c.fn;
  if (total == 0) throw std::invalid_argument("sem_acc needs at least one example");
  const double good = static_cast<double>(c.tp + c.tn), bad = static_cast<double>(c.fp + c.fn);
  return (good - bad) / static_cast<double>(total) * 100.0;
}

double sem_acc(const Regex& r, const std::vector<std::string>& positives, const std::vector<std::string>& negatives) {
  return sem_acc(classify(r, positives, negatives));
}

bool fully_accurate(const Regex& r, const std::vector<std::string>& positives,
                    const std::vector<std::string>& negatives) {
  Confusion c = classify(r, positives, negatives);
  return c.fp == 0 && c.fn == 0;
}

Aggregate aggregate(const std::vector<RunRow>& rows, double timeout) {
  Aggregate g;
  g.instances = rows.size();
  if (rows.empty()) return g;
  double acc = 0, runtime = 0, success_runtime = 0;
  std::size_t full = 0;
  for (const auto& row : rows) {
    if (row.success()) {
      ++g.successes;
      acc += row.sem_acc.value_or(0.0);
      if (row.fully_accurate) ++full;
      runtime += row.elapsed;
      success_runtime += row.elapsed;
    } else {
      runtime += timeout;
    }
  }
  const auto n = static_cast<double>(rows.size());
  g.success_rate = 100.0 * static_cast<double>(g.successes) / n;
  g.mean_acc = acc / n;
  g.full_ratio = 100.0 * static_cast<double>(full) / n;
  g.mean_runtime = runtime / n;
  g.success_runtime = g.successes ? success_runtime / static_cast<double>(g.successes) : 0.0;
  return g;
}

Comparison compare(const std::vector<RunRow>& a, const std::vector<RunRow>& b, double timeout_a,
                   double timeout_b) {
  std::map<std::size_t, const RunRow*> by_instance;
  for (const auto& row : b) by_instance.emplace(row.instance, &row);
  Comparison c;
  double wins_a = 0, wins_b = 0, rt_a = 0, rt_b = 0, joint_a = 0, joint_b = 0;
  std::size_t shared = 0;
  for (const auto& ra : a) {
    auto it = by_instance.find(ra.instance);
    if (it == by_instance.end()) continue;
    const RunRow& rb = *it->second;
    ++shared;
    const double ta = ra.success() ? ra.elapsed : timeout_a;
    const double tb = rb.success() ? rb.elapsed : timeout_b;
    rt_a += ta;
    rt_b += tb;
    if (!ra.success() && !rb.success()) continue;
    ++c.contested;
    if (ra.success() && rb.success()) {
      ++c.joint;
      joint_a += ra.elapsed;
      joint_b += rb.elapsed;
    } else if (ra.success()) {
      ++c.only_a;
    } else {
      ++c.only_b;
    }
    // a failure runs for the full timeout, so it loses to any success
    if (!rb.success() || (ra.success() && ta < tb)) {
      wins_a += 1;
    } else if (!ra.success() || tb < ta) {
      wins_b += 1;
    } else {
      wins_a += 0.5;
      wins_b += 0.5;
    }
  }
  if (shared) {
    c.runtime_a = rt_a / static_cast<double>(shared);
    c.runtime_b = rt_b / static_cast<double>(shared);
  }
  if (c.contested) {
    c.win_a = 100.0 * wins_a / static_cast<double>(c.contested);
    c.win_b = 100.0 * wins_b / static_cast<double>(c.contested);
  }
  if (c.joint) {
    c.joint_runtime_a = joint_a / static_cast<double>(c.joint);
    c.joint_runtime_b = joint_b / static_cast<double>(c.joint);
  }
  return c;
}

}  // namespace rxsynth
