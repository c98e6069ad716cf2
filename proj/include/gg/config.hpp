#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gg/narrator.hpp"
#include "gg/policy.hpp"
#include "gg/reasoner.hpp"

namespace gg {

/// Flat `key = value` document with `[section]` prefixes and `#` comments.
/// Values are bare words, double-quoted strings, or `[a, "b", ...]` lists;
/// every value is stored as a list of strings.
class ConfigDocument {
 public:
  static ConfigDocument parse(std::string_view text);
  static ConfigDocument load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return values_.contains(key); }
  const std::vector<std::string>& list(const std::string& key) const;
  const std::string& scalar(const std::string& key) const;
  /// Keys under `prefix.` in document order of their sorted names.
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;
  const std::map<std::string, std::vector<std::string>>& values() const { return values_; }

 private:
  std::map<std::string, std::vector<std::string>> values_;
};

/// A narration template and binding sequence pair of the prompt study.
struct PromptVariant {
  std::string name;
  std::string template_id;
  std::string binding_sequence;
};

/// Table I prompt grid: P0-P3 narrate the activity history, P4 and P5 do not.
std::vector<PromptVariant> default_prompt_grid();

struct ExperimentConfig {
  std::filesystem::path map_path;
  std::filesystem::path program_path;
  std::vector<PolicyKind> policies{PolicyKind::informed_avoidance};
  std::string scorer = "stub:oracle-next-room";
  std::string template_id = "default";
  std::string binding_sequence{kDefaultBindingSequence};
  std::vector<int> room_times{25};
  std::size_t restarts = 1000;
  std::uint64_t master_seed = 0;
  std::uint64_t human_seed = 0;
  int horizon = 500;
  std::size_t window = kDefaultWindowSize;
  std::size_t jobs = 1;
  bool length_normalized = false;
  int bin_width = 10;
  std::optional<std::filesystem::path> duration_table;
  std::map<std::string, int> durations;  // inline overrides
  std::filesystem::path out_dir = "results";
  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> summary_path;
  TemplateRegistry templates;
  std::vector<PromptVariant> prompts = default_prompt_grid();

  /// Applies every recognized key of the document; unknown keys are errors.
  /// Relative paths resolve against `base_dir`.
  void apply(const ConfigDocument& doc, const std::filesystem::path& base_dir = {});

  /// Checks files exist and values are in range; throws ConfigError.
  void validate() const;

  std::filesystem::path runs_csv() const { return csv_path.value_or(out_dir / "runs.csv"); }
  std::filesystem::path summary_json() const { return summary_path.value_or(out_dir / "summary.json"); }
};

std::vector<int> parse_int_list(std::string_view text);
std::vector<std::string> split_list(std::string_view text);

}  // namespace gg
