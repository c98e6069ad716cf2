#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gg/semantic_map.hpp"

namespace gg {

/// Program-local item reference, e.g. `<mug> (1)`.
struct ItemRef {
  std::string label;
  int local_id = 0;

  auto operator<=>(const ItemRef&) const = default;
};

struct AtomicAction {
  std::string verb;
  std::vector<ItemRef> item_refs;  // zero, one or two
  int duration = 1;                // time steps

  bool operator==(const AtomicAction&) const = default;
};

struct ActivityProgram {
  std::string name;
  std::vector<AtomicAction> actions;

  int cycle_length() const;
};

/// Verb -> duration (time steps). Lookups of unlisted verbs fall back to the
/// default duration, or fail when no default is configured.
class DurationTable {
 public:
  /// Walk=3; Grab/Put/Open/Close/SwitchOn/SwitchOff=1; Sit/Watch/Work=5;
  /// everything else 2.
  static DurationTable defaults();

  /// `Verb = steps` lines, `#` comments; the key `default` sets the fallback
  /// and `default = none` removes it.
  static DurationTable parse(std::string_view text);
  static DurationTable load(const std::filesystem::path& path);

  void set(std::string verb, int steps);
  void set_default(std::optional<int> steps);

  std::optional<int> lookup(std::string_view verb) const;

 private:
  std::map<std::string, int, std::less<>> table_;
  std::optional<int> default_ = 2;
};

/// One atomic action per non-blank line, `#` lines ignored. Throws ParseError
/// carrying the 1-based line number.
ActivityProgram parse_program(std::string_view text,
                              const DurationTable& durations = DurationTable::defaults(),
                              std::string name = {});
ActivityProgram load_program(const std::filesystem::path& path,
                             const DurationTable& durations = DurationTable::defaults());

using ItemBinding = std::map<ItemRef, int>;

/// Binds each distinct program reference to a concrete item of that label.
/// Distinct local ids of one label receive distinct items; the choice is a
/// deterministic function of the seed. Throws BindingError when a label is
/// missing or has fewer instances than distinct ids.
ItemBinding bind_items(const ActivityProgram& program, const SemanticMap& map,
                       std::uint64_t seed);

struct CompletedAction {
  int time = 0;  // step at which the action finished
  AtomicAction action;
  std::size_t room = 0;
  std::string room_name;
};

/// Human room per step for t = 0..T and the actions in completion order.
struct OccupancyTrace {
  std::vector<std::size_t> rooms;
  std::vector<CompletedAction> completed;

  int horizon() const { return static_cast<int>(rooms.size()) - 1; }

  /// Actions that finished at or before step t, oldest first, at most
  /// `window` of the most recent ones.
  std::vector<CompletedAction> completed_until(int t, std::size_t window) const;
};

/// Room occupied while each action runs. An action with items takes the
/// room of its first bound item; item-less actions keep the previous room.
/// The program is treated as a cycle, so the first action inherits from the
/// last action with items.
std::vector<std::size_t> action_rooms(const ActivityProgram& program,
                                      const ItemBinding& binding,
                                      const SemanticMap& map);

/// Runs the program from t = 0, restarting it whenever it finishes, until the
/// horizon.
OccupancyTrace simulate_human(const ActivityProgram& program, const ItemBinding& binding,
                              const SemanticMap& map, int horizon);

}  // namespace gg
