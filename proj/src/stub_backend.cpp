#include "gg/stub_backend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gg/activity_model.hpp"
#include "gg/errors.hpp"
#include "gg/narrator.hpp"
#include "gg/semantic_map.hpp"
#include "gg/tokenizer.hpp"
#include "json.hpp"

namespace gg {

void StubTable::set(const std::string& suffix, const std::string& completion,
                    std::vector<double> probs) {
  if (probs.empty()) throw ValidationError("stub entry for '" + completion + "' has no probabilities");
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError("stub probability for '" + completion + "' outside [0, 1]");
  }
  groups[suffix][completion] = std::move(probs);
}

StubTable StubTable::parse(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed stub fixture: ") + e.what());
  }
  StubTable table;
  try {
    if (doc.contains("default")) table.default_token_prob = doc["default"].get<double>();
    if (!(table.default_token_prob >= 0.0 && table.default_token_prob <= 1.0))
      throw ValidationError("stub default probability outside [0, 1]");
    for (const auto& e : doc.value("entries", json::array())) {
      const std::string suffix = e.value("suffix", std::string());
      const std::string completion = e.at("completion").get<std::string>();
      if (e.contains("token_probs"))
        table.set(suffix, completion, e["token_probs"].get<std::vector<double>>());
      else
        table.set(suffix, completion, {e.at("p").get<double>()});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid stub fixture: ") + e.what());
  }
  return table;
}

StubTable StubTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("stub fixture not found: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

StubBackend::StubBackend(StubTable table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {}

std::vector<CompletionScore> StubBackend::score(std::string_view prompt,
                                                const std::vector<std::string>& completions) const {
  const std::map<std::string, std::vector<double>>* group = nullptr;
  std::size_t best = 0;
  for (const auto& [suffix, entries] : table_.groups) {
    if (suffix.size() < best || (group && suffix.size() == best)) continue;
    if (prompt.ends_with(suffix)) {
      group = &entries;
      best = suffix.size();
    }
  }

  const double floor_log = std::log(kStubFloor);
  auto clamp_log = [&](double p) { return std::max(std::log(p), floor_log); };

  std::vector<CompletionScore> out;
  out.reserve(completions.size());
  for (const auto& c : completions) {
    const std::size_t n = split_tokens(c).size();
    if (n == 0) throw TokenizationError("completion '" + c + "' has no tokens");
    std::vector<double> logprobs(n, clamp_log(table_.default_token_prob));
    if (group) {
      auto hit = group->find(c);
      if (hit != group->end()) {
        const auto& probs = hit->second;
        if (probs.size() > n)
          throw TokenizationError("stub entry for '" + c + "' has more token probabilities than tokens");
        std::fill(logprobs.begin(), logprobs.end(), 0.0);
        for (std::size_t j = 0; j < probs.size(); ++j) logprobs[j] = clamp_log(probs[j]);
      }
    }
    out.push_back(CompletionScore::from_logprobs(c, std::move(logprobs)));
  }
  return out;
}

StubTable make_next_room_table(const StubContext& ctx, double hit, double miss) {
  if (!ctx.map || !ctx.program || !ctx.action_rooms || !ctx.templates)
    throw ConfigError("stub 'oracle-next-room' needs a map, program and binding");
  const auto& actions = ctx.program->actions;
  const std::size_t n = actions.size();
  const auto& rooms = *ctx.action_rooms;
  if (rooms.size() != n) throw ConfigError("stub 'oracle-next-room': room list does not match program");
  const NarrationTemplate& tmpl = ctx.templates->get(ctx.template_id);

  std::vector<std::string> sentences(n);
  for (std::size_t k = 0; k < n; ++k)
    sentences[k] = narrate_action({0, actions[k], rooms[k], ctx.map->rooms()[rooms[k]].name}, tmpl);

  // suffix -> rooms the human occupies right after it.
  std::map<std::string, std::set<std::size_t>> next_rooms;

  // First cycle, window not yet full: the header is still part of the prompt.
  std::string prefix = tmpl.header;
  for (std::size_t c = 0; c < ctx.window; ++c) {
    next_rooms[prefix + ctx.binding_sequence].insert(rooms[c % n]);
    prefix += sentences[c % n];
  }
  // Steady state: the last m sentences before the binding sequence.
  for (std::size_t k = 0; k < n; ++k) {
    std::string tail;
    for (std::size_t m = 1; m <= ctx.window; ++m) {
      tail = sentences[(k + n * ctx.window + 1 - m) % n] + tail;
      next_rooms[tail + ctx.binding_sequence].insert(rooms[(k + 1) % n]);
    }
  }

  std::vector<std::set<std::string>> labels_in_room(ctx.map->room_count());
  for (const auto& item : ctx.map->items())
    labels_in_room[ctx.map->room_of_item(item.id)].insert(item.label);

  StubTable table;
  table.default_token_prob = miss;
  for (const auto& [suffix, targets] : next_rooms) {
    if (targets.size() != 1) continue;
    for (const auto& label : labels_in_room[*targets.begin()]) table.set(suffix, label, {hit});
  }
  return table;
}

}  // namespace gg
