#include "gg/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "gg/errors.hpp"

namespace gg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Reads one value starting at `pos`: quoted string or bare word up to the
// next delimiter. Advances `pos` past it.
std::string read_value(std::string_view s, std::size_t& pos, std::string_view delims, std::size_t line_no) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  std::string out;
  if (pos < s.size() && s[pos] == '"') {
    ++pos;
    while (pos < s.size() && s[pos] != '"') {
      char c = s[pos++];
      if (c == '\\' && pos < s.size()) {
        const char e = s[pos++];
        c = e == 'n' ? '\n' : e == 't' ? '\t' : e;
      }
      out.push_back(c);
    }
    if (pos >= s.size()) throw ParseError("config line " + std::to_string(line_no) + ": unterminated string");
    ++pos;
    return out;
  }
  const std::size_t start = pos;
  while (pos < s.size() && delims.find(s[pos]) == std::string_view::npos) ++pos;
  return std::string(trim(s.substr(start, pos - start)));
}

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    if (line[k] == '\\' && quoted) {
      ++k;
    } else if (line[k] == '"') {
      quoted = !quoted;
    } else if (line[k] == '#' && !quoted) {
      return std::string(line.substr(0, k));
    }
  }
  return std::string(line);
}

}  // namespace

ConfigDocument ConfigDocument::parse(std::string_view text) {
  ConfigDocument doc;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string stripped = strip_comment(raw);
    std::string_view line = trim(stripped);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string_view::npos) {
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    if (key.size() >= 2 && key.front() == '"' && key.back() == '"') key = key.substr(1, key.size() - 2);
    if (key.empty()) throw ParseError("config line " + std::to_string(line_no) + ": empty key");
    if (!section.empty()) key = section + "." + key;

    const std::string_view rest = trim(line.substr(eq + 1));
    std::vector<std::string> values;
    std::size_t pos = 0;
    if (!rest.empty() && rest.front() == '[') {
      pos = 1;
      while (true) {
        while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
        if (pos < rest.size() && rest[pos] == ']') break;
        values.push_back(read_value(rest, pos, ",]", line_no));
        while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
        if (pos < rest.size() && rest[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < rest.size() && rest[pos] == ']') break;
        throw ParseError("config line " + std::to_string(line_no) + ": malformed list");
      }
    } else {
      values.push_back(read_value(rest, pos, "", line_no));
      if (!trim(rest.substr(pos)).empty())
        throw ParseError("config line " + std::to_string(line_no) + ": trailing characters after value");
    }
    if (!doc.values_.emplace(key, std::move(values)).second)
      throw ParseError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }
  return doc;
}

ConfigDocument ConfigDocument::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

const std::vector<std::string>& ConfigDocument::list(const std::string& key) const {
  auto found = values_.find(key);
  if (found == values_.end()) throw ConfigError("missing config key '" + key + "'");
  return found->second;
}

const std::string& ConfigDocument::scalar(const std::string& key) const {
  const auto& v = list(key);
  if (v.size() != 1) throw ConfigError("config key '" + key + "' expects a single value");
  return v.front();
}

std::vector<std::string> ConfigDocument::keys_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [k, _] : values_)
    if (k.starts_with(prefix + ".")) out.push_back(k);
  return out;
}

std::vector<PromptVariant> default_prompt_grid() {
  return {
      {"P0", "default", "Next, they will go to the "},
      {"P1", "default", "The next object they are walking to is the "},
      {"P2", "default", "After this, they are going to interact with the "},
      {"P3", "default", "The most tasty object in the world is the "},
      {"P4", "none", "The most expensive object in the world is the "},
      {"P5", "none", "Next, they will go to the "},
  };
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const auto part = trim(text.substr(pos, end - pos));
    if (!part.empty()) out.emplace_back(part);
    pos = end + 1;
  }
  return out;
}

namespace {

long long to_integer(std::string_view s, const std::string& what) {
  long long v = 0;
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(what + ": '" + std::string(s) + "' is not an integer");
  return v;
}

std::uint64_t to_unsigned(std::string_view s, const std::string& what) {
  std::uint64_t v = 0;
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(what + ": '" + std::string(s) + "' is not a non-negative integer");
  return v;
}

bool to_bool(std::string_view s, const std::string& what) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(what + ": '" + std::string(s) + "' is not a boolean");
}

// Lists may be given as [a, b] or as one comma-separated string.
std::vector<std::string> flatten(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  for (const auto& v : values)
    for (auto& part : split_list(v)) out.push_back(std::move(part));
  return out;
}

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& part : split_list(text)) out.push_back(static_cast<int>(to_integer(part, "integer list")));
  return out;
}

void ExperimentConfig::apply(const ConfigDocument& doc, const std::filesystem::path& base_dir) {
  auto path_of = [&](const std::string& v) {
    std::filesystem::path p(v);
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  std::map<std::string, NarrationTemplate> new_templates;
  bool prompts_reset = false;

  for (const auto& [key, values] : doc.values()) {
    auto one = [&] { return doc.scalar(key); };
    if (key == "map") {
      map_path = path_of(one());
    } else if (key == "program") {
      program_path = path_of(one());
    } else if (key == "policy") {
      policies.clear();
      for (const auto& p : flatten(values)) policies.push_back(parse_policy(p));
    } else if (key == "scorer") {
      scorer = one();
      // Relative corpus and fixture paths follow the config file.
      for (const std::string scheme : {"ngram:", "stub:"}) {
        if (scorer.starts_with(scheme)) {
          std::string arg = scorer.substr(scheme.size());
          const auto comma = scheme == "ngram:" ? arg.rfind(',') : std::string::npos;
          const std::string path = arg.substr(0, comma);
          if (!base_dir.empty() && std::filesystem::exists(base_dir / path) && std::filesystem::path(path).is_relative())
            scorer = scheme + (base_dir / path).string() + (comma == std::string::npos ? "" : arg.substr(comma));
        }
      }
    } else if (key == "template") {
      template_id = one();
    } else if (key == "binding") {
      binding_sequence = one();
    } else if (key == "room-time") {
      room_times.clear();
      for (const auto& v : flatten(values)) room_times.push_back(static_cast<int>(to_integer(v, key)));
    } else if (key == "restarts") {
      restarts = static_cast<std::size_t>(to_unsigned(one(), key));
    } else if (key == "seed") {
      master_seed = to_unsigned(one(), key);
    } else if (key == "human-seed") {
      human_seed = to_unsigned(one(), key);
    } else if (key == "horizon") {
      horizon = static_cast<int>(to_integer(one(), key));
    } else if (key == "window") {
      window = static_cast<std::size_t>(to_unsigned(one(), key));
    } else if (key == "jobs") {
      jobs = static_cast<std::size_t>(to_unsigned(one(), key));
    } else if (key == "length-normalized") {
      length_normalized = to_bool(one(), key);
    } else if (key == "bin-width") {
      bin_width = static_cast<int>(to_integer(one(), key));
    } else if (key == "duration-table") {
      duration_table = path_of(one());
    } else if (key == "out") {
      out_dir = path_of(one());
    } else if (key == "csv") {
      csv_path = path_of(one());
    } else if (key == "summary") {
      summary_path = path_of(one());
    } else if (key.starts_with("durations.")) {
      durations[key.substr(10)] = static_cast<int>(to_integer(one(), key));
    } else if (key.starts_with("templates.")) {
      const auto rest = key.substr(10);
      const auto dot = rest.rfind('.');
      if (dot == std::string::npos) throw ConfigError("template key '" + key + "' needs templates.<id>.<field>");
      auto& t = new_templates[rest.substr(0, dot)];
      const auto field = rest.substr(dot + 1);
      if (field == "header") t.header = one();
      else if (field == "action") t.action_one_item = one();
      else if (field == "action-none") t.action_no_item = one();
      else if (field == "action-two") t.action_two_items = one();
      else if (field == "appliance") t.appliance = one();
      else throw ConfigError("unknown template field '" + field + "' in '" + key + "'");
    } else if (key.starts_with("prompts.")) {
      if (values.size() != 2) throw ConfigError(key + ": expected [template, binding sequence]");
      if (!prompts_reset) prompts.clear();
      prompts_reset = true;
      prompts.push_back({key.substr(8), values[0], values[1]});
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  for (auto& [id, t] : new_templates) templates.add(id, std::move(t));
}

void ExperimentConfig::validate() const {
  if (map_path.empty()) throw ConfigError("no map file given");
  if (!std::filesystem::exists(map_path)) throw ConfigError("map file not found: " + map_path.string());
  if (program_path.empty()) throw ConfigError("no program file given");
  if (!std::filesystem::exists(program_path))
    throw ConfigError("program file not found: " + program_path.string());
  if (duration_table && !std::filesystem::exists(*duration_table))
    throw ConfigError("duration table not found: " + duration_table->string());
  if (policies.empty()) throw ConfigError("no policy given");
  if (room_times.empty()) throw ConfigError("room-time list is empty");
  for (int tr : room_times)
    if (tr < 1 || tr > horizon) throw ConfigError("room time " + std::to_string(tr) + " outside [1, horizon]");
  if (restarts < 1) throw ConfigError("restarts must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (bin_width < 1) throw ConfigError("bin width must be >= 1");
  if (!templates.contains(template_id)) throw ConfigError("unknown narration template '" + template_id + "'");
  for (const auto& p : prompts)
    if (!templates.contains(p.template_id))
      throw ConfigError("prompt " + p.name + " uses unknown template '" + p.template_id + "'");
}

}  // namespace gg
