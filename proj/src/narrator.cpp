#include "gg/narrator.hpp"

#include <algorithm>
#include <cctype>

#include "gg/errors.hpp"

namespace gg {

ObservationHistory ObservationHistory::at(const OccupancyTrace& trace, int t,
                                          std::size_t window_size) {
  return {trace.completed_until(t, window_size), window_size, {}};
}

TemplateRegistry::TemplateRegistry() {
  add("default", {"A human is in the apartment. ", "They {verb}. ", "They {verb} the {label}. ",
                  "They {verb} the {label} {prep} the {label2}. ",
                  "The {appliance} switched {state} {minutes} minutes ago. "});
  add("none", {});
}

void TemplateRegistry::add(std::string id, NarrationTemplate tmpl) {
  templates_[std::move(id)] = std::move(tmpl);
}

bool TemplateRegistry::contains(std::string_view id) const {
  return templates_.find(id) != templates_.end();
}

const NarrationTemplate& TemplateRegistry::get(std::string_view id) const {
  auto found = templates_.find(id);
  if (found == templates_.end())
    throw ConfigError("unknown narration template '" + std::string(id) + "'");
  return found->second;
}

std::vector<std::string> TemplateRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : templates_) out.push_back(id);
  return out;
}

namespace {

const std::map<std::string, std::string, std::less<>>& past_tense_table() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"Walk", "walked to"},     {"Run", "ran to"},
      {"Find", "found"},         {"Grab", "grabbed"},
      {"Put", "put"},            {"PutBack", "put back"},
      {"PutIn", "put"},          {"PutObjBack", "put back"},
      {"Open", "opened"},        {"Close", "closed"},
      {"SwitchOn", "switched on"}, {"SwitchOff", "switched off"},
      {"Sit", "sat on"},         {"StandUp", "stood up"},
      {"Lie", "lay on"},         {"Sleep", "slept"},
      {"WakeUp", "woke up"},     {"Watch", "watched"},
      {"Work", "worked at"},     {"Type", "typed on"},
      {"Read", "read"},          {"Cook", "cooked on"},
      {"Wash", "washed"},        {"Rinse", "rinsed"},
      {"Scrub", "scrubbed"},     {"Wipe", "wiped"},
      {"Pour", "poured"},        {"Drink", "drank from"},
      {"Eat", "ate at"},         {"LookAt", "looked at"},
      {"TurnTo", "turned to"},   {"PointAt", "pointed at"},
      {"Touch", "touched"},      {"Push", "pushed"},
      {"Pull", "pulled"},        {"Drop", "dropped"},
      {"PutOn", "put on"},       {"PutOff", "took off"},
      {"Greet", "greeted"},      {"Brush", "brushed"},
      {"Squeeze", "squeezed"},   {"Plugin", "plugged in"},
      {"Plugout", "unplugged"},
  };
  return table;
}

void replace_all(std::string& s, std::string_view key, std::string_view value) {
  for (std::size_t pos = s.find(key); pos != std::string::npos;
       pos = s.find(key, pos + value.size()))
    s.replace(pos, key.size(), value);
}

}  // namespace

std::string past_tense(std::string_view verb) {
  const auto& table = past_tense_table();
  auto found = table.find(verb);
  if (found != table.end()) return found->second;
  std::string out(verb);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string preposition(std::string_view verb) {
  if (verb == "Put" || verb == "PutBack" || verb == "PutObjBack") return "on";
  if (verb == "PutIn" || verb == "Pour") return "into";
  return "with";
}

std::string narrate_action(const CompletedAction& done, const NarrationTemplate& tmpl) {
  const auto& refs = done.action.item_refs;
  std::string s = refs.empty()       ? tmpl.action_no_item
                  : refs.size() == 1 ? tmpl.action_one_item
                                     : tmpl.action_two_items;
  replace_all(s, "{verb}", past_tense(done.action.verb));
  replace_all(s, "{prep}", preposition(done.action.verb));
  if (!refs.empty()) replace_all(s, "{label}", refs[0].label);
  if (refs.size() > 1) replace_all(s, "{label2}", refs[1].label);
  replace_all(s, "{room}", done.room_name.empty() ? "room " + std::to_string(done.room) : done.room_name);
  return s;
}

Narration narrate(const ObservationHistory& history, std::string_view template_id,
                  const TemplateRegistry& registry) {
  const NarrationTemplate& tmpl = registry.get(template_id);
  std::string text = tmpl.header;
  const std::size_t n = history.window.size();
  const std::size_t first = n > history.window_size ? n - history.window_size : 0;
  for (std::size_t k = first; k < n; ++k) text += narrate_action(history.window[k], tmpl);
  for (const auto& a : history.appliance_states) {
    if (tmpl.appliance.empty()) break;
    std::string s = tmpl.appliance;
    replace_all(s, "{appliance}", a.appliance);
    replace_all(s, "{state}", a.state);
    replace_all(s, "{minutes}", std::to_string(a.minutes_since_change));
    text += s;
  }
  return {std::move(text), std::string(template_id)};
}

}  // namespace gg
