#include "gg/activity_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "gg/errors.hpp"
#include "gg/rng.hpp"

namespace gg {

int ActivityProgram::cycle_length() const {
  int total = 0;
  for (const auto& a : actions) total += a.duration;
  return total;
}

DurationTable DurationTable::defaults() {
  DurationTable t;
  t.set("Walk", 3);
  for (const char* v : {"Grab", "Put", "Open", "Close", "SwitchOn", "SwitchOff"}) t.set(v, 1);
  for (const char* v : {"Sit", "Watch", "Work"}) t.set(v, 5);
  t.set_default(2);
  return t;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

DurationTable DurationTable::parse(std::string_view text) {
  DurationTable t;
  t.set_default(2);
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("duration table line " + std::to_string(line_no) + ": expected 'Verb = steps'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "default" && value == "none") {
      t.set_default(std::nullopt);
      continue;
    }
    const auto steps = parse_int(value);
    if (key.empty() || !steps || *steps < 1)
      throw ParseError("duration table line " + std::to_string(line_no) +
                       ": expected a positive integer duration");
    if (key == "default")
      t.set_default(*steps);
    else
      t.set(std::string(key), *steps);
  }
  return t;
}

DurationTable DurationTable::load(const std::filesystem::path& path) {
  try {
    return parse(read_file(path, "duration table"));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void DurationTable::set(std::string verb, int steps) {
  if (steps < 1) throw ValidationError("duration for '" + verb + "' must be >= 1");
  table_[std::move(verb)] = steps;
}

void DurationTable::set_default(std::optional<int> steps) {
  if (steps && *steps < 1) throw ValidationError("default duration must be >= 1");
  default_ = steps;
}

std::optional<int> DurationTable::lookup(std::string_view verb) const {
  auto found = table_.find(verb);
  if (found != table_.end()) return found->second;
  return default_;
}

ActivityProgram parse_program(std::string_view text, const DurationTable& durations,
                              std::string name) {
  ActivityProgram program{std::move(name), {}};
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    auto fail = [&](const std::string& msg) -> ParseError {
      return ParseError("line " + std::to_string(line_no) + ": " + msg);
    };

    if (line.front() != '[') throw fail("expected '[' to open the action verb");
    const auto close = line.find(']');
    if (close == std::string_view::npos) throw fail("missing ']' after the action verb");
    AtomicAction action;
    action.verb = std::string(trim(line.substr(1, close - 1)));
    if (action.verb.empty()) throw fail("empty action verb");
    line = trim(line.substr(close + 1));

    while (!line.empty()) {
      if (line.front() != '<') throw fail("expected '<label>' after the verb");
      const auto gt = line.find('>');
      if (gt == std::string_view::npos) throw fail("missing '>' after the item label");
      const std::string label(trim(line.substr(1, gt - 1)));
      if (label.empty()) throw fail("empty item label");
      line = trim(line.substr(gt + 1));
      if (line.empty() || line.front() != '(') throw fail("expected '(id)' after <" + label + ">");
      const auto rp = line.find(')');
      if (rp == std::string_view::npos) throw fail("missing ')' after the item id");
      const auto id = parse_int(trim(line.substr(1, rp - 1)));
      if (!id) throw fail("item id for <" + label + "> is not an integer");
      action.item_refs.push_back({label, *id});
      line = trim(line.substr(rp + 1));
    }
    if (action.item_refs.size() > 2) throw fail("an action may reference at most two items");

    const auto steps = durations.lookup(action.verb);
    if (!steps) throw fail("unknown verb '" + action.verb + "' and no default duration");
    action.duration = *steps;
    program.actions.push_back(std::move(action));
  }
  if (program.actions.empty()) throw ParseError("empty program");
  return program;
}

ActivityProgram load_program(const std::filesystem::path& path, const DurationTable& durations) {
  try {
    return parse_program(read_file(path, "program file"), durations, path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

ItemBinding bind_items(const ActivityProgram& program, const SemanticMap& map,
                       std::uint64_t seed) {
  std::map<std::string, std::vector<int>> instances;
  for (const auto& it : map.items()) instances[it.label].push_back(it.id);

  Rng rng(seed);
  ItemBinding binding;
  std::map<std::string, std::set<int>> taken;
  for (const auto& action : program.actions) {
    for (const auto& ref : action.item_refs) {
      if (binding.contains(ref)) continue;
      auto found = instances.find(ref.label);
      if (found == instances.end())
        throw BindingError("cannot bind <" + ref.label + "> (" + std::to_string(ref.local_id) +
                           "): label not present in the map");
      std::vector<int> free;
      for (int id : found->second)
        if (!taken[ref.label].contains(id)) free.push_back(id);
      if (free.empty())
        throw BindingError("cannot bind <" + ref.label + "> (" + std::to_string(ref.local_id) +
                           "): more distinct ids than the " +
                           std::to_string(found->second.size()) + " instances in the map");
      const int chosen = free[rng.uniform_index(free.size())];
      taken[ref.label].insert(chosen);
      binding.emplace(ref, chosen);
    }
  }
  return binding;
}

std::vector<std::size_t> action_rooms(const ActivityProgram& program, const ItemBinding& binding,
                                      const SemanticMap& map) {
  const std::size_t n = program.actions.size();
  std::vector<std::optional<std::size_t>> own(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& refs = program.actions[k].item_refs;
    if (refs.empty()) continue;
    auto found = binding.find(refs.front());
    if (found == binding.end())
      throw BindingError("no binding for <" + refs.front().label + "> (" +
                         std::to_string(refs.front().local_id) + ")");
    own[k] = map.room_of_item(found->second);
  }

  std::optional<std::size_t> carry;
  for (std::size_t k = n; k-- > 0;) {
    if (own[k]) {
      carry = own[k];
      break;
    }
  }
  std::vector<std::size_t> rooms(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (own[k]) carry = own[k];
    rooms[k] = carry.value_or(0);
  }
  return rooms;
}

OccupancyTrace simulate_human(const ActivityProgram& program, const ItemBinding& binding,
                              const SemanticMap& map, int horizon) {
  if (horizon < 0) throw ValidationError("horizon must be non-negative");
  const auto rooms = action_rooms(program, binding, map);

  OccupancyTrace trace;
  trace.rooms.reserve(static_cast<std::size_t>(horizon) + 1);
  int start = 0;
  std::size_t k = 0;
  while (start <= horizon) {
    const AtomicAction& action = program.actions[k];
    const int finish = start + action.duration;
    for (int t = start; t < finish && t <= horizon; ++t) trace.rooms.push_back(rooms[k]);
    // Completion is observable only once the whole duration has elapsed.
    if (finish <= horizon) trace.completed.push_back({finish, action, rooms[k], map.rooms()[rooms[k]].name});
    start = finish;
    k = (k + 1) % program.actions.size();
  }
  return trace;
}

std::vector<CompletedAction> OccupancyTrace::completed_until(int t, std::size_t window) const {
  auto end = std::upper_bound(completed.begin(), completed.end(), t,
                              [](int time, const CompletedAction& c) { return time < c.time; });
  auto begin = completed.begin();
  if (static_cast<std::size_t>(end - begin) > window) begin = end - static_cast<std::ptrdiff_t>(window);
  return {begin, end};
}

}  // namespace gg
