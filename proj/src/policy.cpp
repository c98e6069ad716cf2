#include "gg/policy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gg/errors.hpp"

namespace gg {

PolicyKind parse_policy(std::string_view name) {
  if (name == "naive") return PolicyKind::naive;
  if (name == "greedy" || name == "greedy_avoidance") return PolicyKind::greedy_avoidance;
  if (name == "informed" || name == "informed_avoidance") return PolicyKind::informed_avoidance;
  throw ConfigError("unknown policy '" + std::string(name) + "' (naive, greedy, informed)");
}

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::naive: return "naive";
    case PolicyKind::greedy_avoidance: return "greedy";
    case PolicyKind::informed_avoidance: return "informed";
  }
  return "?";
}

namespace {

// Partition sums are accumulated in floating point, so mathematically equal
// scores can differ in the last bits. Scores this close, relative to the
// largest magnitude, count as tied.
constexpr double kTieTolerance = 1e-12;

double tie_band(const std::map<int, double>& scores) {
  double largest = 0.0;
  for (const auto& [_, s] : scores) largest = std::max(largest, std::abs(s));
  return kTieTolerance * largest;
}

}  // namespace

int argmax_partition(const std::map<int, double>& scores) {
  if (scores.empty()) throw ValidationError("no partition scores");
  double highest = scores.begin()->second;
  for (const auto& [_, s] : scores) highest = std::max(highest, s);
  const double band = tie_band(scores);
  for (const auto& [id, s] : scores)
    if (s >= highest - band) return id;
  return scores.begin()->first;
}

int select_next_partition(PolicyKind kind, const std::map<int, double>& scores, Rng& rng) {
  if (scores.empty()) throw ValidationError("no partitions to choose from");
  if (kind != PolicyKind::naive && scores.size() < 2)
    throw ValidationError("avoidance policies need at least two partitions");

  std::vector<int> candidates;
  switch (kind) {
    case PolicyKind::naive:
      for (const auto& [id, _] : scores) candidates.push_back(id);
      break;
    case PolicyKind::greedy_avoidance: {
      double lowest = scores.begin()->second;
      for (const auto& [_, s] : scores) lowest = std::min(lowest, s);
      const double band = tie_band(scores);
      for (const auto& [id, s] : scores)
        if (s <= lowest + band) candidates.push_back(id);
      break;
    }
    case PolicyKind::informed_avoidance: {
      const int excluded = argmax_partition(scores);
      for (const auto& [id, _] : scores)
        if (id != excluded) candidates.push_back(id);
      break;
    }
  }
  return candidates[rng.uniform_index(candidates.size())];
}

}  // namespace gg
