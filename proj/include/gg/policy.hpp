#pragma once

#include <map>
#include <string>
#include <string_view>

#include "gg/rng.hpp"

namespace gg {

enum class PolicyKind { naive, greedy_avoidance, informed_avoidance };

/// Accepts the CLI names (naive, greedy, informed) and the long names.
PolicyKind parse_policy(std::string_view name);
std::string_view policy_name(PolicyKind kind);

/// Partition with the highest score; ties (equal up to rounding) resolve to the
/// lowest id.
int argmax_partition(const std::map<int, double>& scores);

/// Next partition for the robot:
///  - naive: uniform over all partitions;
///  - greedy_avoidance: lowest score, ties drawn uniformly;
///  - informed_avoidance: uniform over all partitions except argmax_partition.
/// Avoidance policies need at least two partitions.
int select_next_partition(PolicyKind kind, const std::map<int, double>& scores, Rng& rng);

}  // namespace gg
