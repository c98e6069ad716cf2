#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gg/activity_model.hpp"

namespace gg {

inline constexpr std::size_t kDefaultWindowSize = 10;

struct ApplianceState {
  std::string appliance;
  std::string state;
  int minutes_since_change = 0;
};

/// The most recent completed actions (oldest first) plus optional appliance
/// states.
struct ObservationHistory {
  std::vector<CompletedAction> window;
  std::size_t window_size = kDefaultWindowSize;
  std::vector<ApplianceState> appliance_states;

  /// Window of the actions completed by step t.
  static ObservationHistory at(const OccupancyTrace& trace, int t,
                               std::size_t window_size = kDefaultWindowSize);
};

/// Sentence patterns of one narration style. Placeholders: {verb}, {label},
/// {label2}, {prep}, {room}; the appliance pattern uses {appliance}, {state}
/// and {minutes}.
struct NarrationTemplate {
  std::string header;
  std::string action_no_item;
  std::string action_one_item;
  std::string action_two_items;
  std::string appliance;
};

struct Narration {
  std::string text;
  std::string style;
};

class TemplateRegistry {
 public:
  /// Registry holding the built-in `default` and `none` templates.
  TemplateRegistry();

  void add(std::string id, NarrationTemplate tmpl);
  bool contains(std::string_view id) const;
  const NarrationTemplate& get(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, NarrationTemplate, std::less<>> templates_;
};

/// Past-tense phrase for a verb ("Walk" -> "walked to"); unlisted verbs are
/// lowercased verbatim.
std::string past_tense(std::string_view verb);

/// Preposition joining the two objects of a two-item action.
std::string preposition(std::string_view verb);

/// Sentence for one completed action under a template.
std::string narrate_action(const CompletedAction& action, const NarrationTemplate& tmpl);

Narration narrate(const ObservationHistory& history, std::string_view template_id,
                  const TemplateRegistry& registry = TemplateRegistry());

}  // namespace gg
