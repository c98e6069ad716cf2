#include "gg/oracle.hpp"

#include <cmath>
#include <limits>

#include "gg/errors.hpp"

namespace gg {

std::vector<std::size_t> expand_sequence(std::span<const std::size_t> sequence, int room_time, int horizon) {
  std::vector<std::size_t> robot;
  robot.reserve(static_cast<std::size_t>(horizon));
  for (int t = 0; t < horizon; ++t) robot.push_back(sequence[static_cast<std::size_t>(t / room_time)]);
  return robot;
}

OracleResult offline_oracle(std::size_t room_count, std::span<const std::size_t> human_rooms, int room_time,
                            int horizon, std::optional<std::size_t> start_room) {
  if (room_count < 1) throw ValidationError("oracle needs at least one room");
  if (room_time < 1 || horizon < 1) throw ConfigError("oracle needs positive room time and horizon");
  if (human_rooms.size() < static_cast<std::size_t>(horizon))
    throw ValidationError("human trace shorter than the horizon");
  if (start_room && *start_room >= room_count) throw ValidationError("start room out of range");

  const std::size_t slots = static_cast<std::size_t>((horizon + room_time - 1) / room_time);
  const std::size_t free_slots = start_room ? slots - 1 : slots;
  const double size = std::pow(static_cast<double>(room_count), static_cast<double>(free_slots));
  if (size > kOracleEnumerationLimit) throw OracleTooLargeError(size, kOracleEnumerationLimit);

  // Disturbance and length of every (slot, room) block.
  std::vector<std::vector<int>> cost(slots, std::vector<int>(room_count, 0));
  std::vector<int> length(slots, 0);
  for (int t = 0; t < horizon; ++t) {
    const auto s = static_cast<std::size_t>(t / room_time);
    ++length[s];
    ++cost[s][human_rooms[static_cast<std::size_t>(t)]];
  }

  OracleResult result;
  result.min_disturbance = std::numeric_limits<int>::max();
  result.min_disturbance_any = std::numeric_limits<int>::max();

  std::vector<std::size_t> seq(slots, 0);
  if (start_room) seq[0] = *start_room;
  const std::size_t first_free = start_room ? 1 : 0;
  std::vector<int> time_in(room_count);
  while (true) {
    ++result.enumerated;
    int d = 0;
    std::fill(time_in.begin(), time_in.end(), 0);
    for (std::size_t s = 0; s < slots; ++s) {
      d += cost[s][seq[s]];
      time_in[seq[s]] += length[s];
    }
    bool covers = true;
    for (int x : time_in) covers = covers && x >= room_time;
    // Enumeration runs in lexicographic order, so strict improvement keeps
    // the smallest sequence among ties.
    if (d < result.min_disturbance_any) {
      result.min_disturbance_any = d;
      result.sequence_any = seq;
    }
    if (covers && d < result.min_disturbance) {
      result.feasible = true;
      result.min_disturbance = d;
      result.sequence = seq;
    }

    std::size_t pos = slots;
    while (pos > first_free) {
      --pos;
      if (++seq[pos] < room_count) break;
      seq[pos] = 0;
      if (pos == first_free) {
        pos = slots + 1;
        break;
      }
    }
    if (pos == slots + 1 || slots == first_free) break;
  }
  if (!result.feasible) result.min_disturbance = 0;
  return result;
}

OracleResult offline_oracle(const SemanticMap& map, const OccupancyTrace& trace, const SimConfig& config,
                            std::optional<std::size_t> start_room) {
  config.validate();
  return offline_oracle(map.room_count(), trace.rooms, config.room_time, config.horizon, start_room);
}

}  // namespace gg
