#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gg/activity_model.hpp"
#include "gg/sim_engine.hpp"

namespace gg {

inline constexpr double kOracleEnumerationLimit = 1e7;

/// Offline optimum over robot room sequences (one room per T_r slot, the
/// last slot possibly shorter) for a known human trace.
struct OracleResult {
  /// A covering sequence exists (T >= n_R * T_r and the start constraint
  /// allows it).
  bool feasible = false;
  /// Minimum D_T among covering sequences and the lexicographically smallest
  /// sequence attaining it.
  int min_disturbance = 0;
  std::vector<std::size_t> sequence;
  /// Minimum D_T when coverage is not required.
  int min_disturbance_any = 0;
  std::vector<std::size_t> sequence_any;
  std::uint64_t enumerated = 0;
};

/// Exhaustive enumeration over n_R^slots sequences. Throws
/// OracleTooLargeError when that count exceeds kOracleEnumerationLimit.
/// `human_rooms` must cover steps 0..horizon-1.
OracleResult offline_oracle(std::size_t room_count, std::span<const std::size_t> human_rooms,
                            int room_time, int horizon,
                            std::optional<std::size_t> start_room = std::nullopt);

OracleResult offline_oracle(const SemanticMap& map, const OccupancyTrace& trace, const SimConfig& config,
                            std::optional<std::size_t> start_room = std::nullopt);

/// Expands a slot sequence into one robot room per step.
std::vector<std::size_t> expand_sequence(std::span<const std::size_t> sequence, int room_time, int horizon);

}  // namespace gg
