#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gg/scorer.hpp"

namespace gg {

/// Probabilities below this floor are raised to it, so no completion scores
/// exactly zero.
inline constexpr double kStubFloor = 1e-6;

/// Table-driven scores. Entries are grouped by prompt suffix; a prompt uses
/// the group with the longest suffix it ends with. Completions without an
/// entry get `default_token_prob` for every token.
///
/// An entry holds either one probability for the whole completion (applied
/// to its first token, later tokens get 1) or one probability per token.
struct StubTable {
  double default_token_prob = kStubFloor;
  std::map<std::string, std::map<std::string, std::vector<double>>> groups;

  void set(const std::string& suffix, const std::string& completion, std::vector<double> probs);

  /// JSON fixture: {"default": p, "entries": [{"suffix": s, "completion": c,
  /// "p": x} or {..., "token_probs": [x, y]}]}
  static StubTable parse(std::string_view json_text);
  static StubTable load(const std::filesystem::path& path);
};

class StubBackend final : public ScoringBackend {
 public:
  explicit StubBackend(StubTable table, std::string name = "stub");

  std::vector<CompletionScore> score(std::string_view prompt,
                                     const std::vector<std::string>& completions) const override;
  std::string name() const override { return name_; }

  const StubTable& table() const { return table_; }

 private:
  StubTable table_;
  std::string name_;
};

/// Stub that knows the activity program: after the narration of each
/// completed action it gives `hit` to every label with an item in the room
/// the human occupies next, and `miss` per token to everything else.
/// Suffixes whose continuation is ambiguous within the program cycle are
/// dropped, so such prompts fall back to shorter context or to `miss`.
StubTable make_next_room_table(const StubContext& ctx, double hit = 0.9, double miss = 1e-4);

}  // namespace gg
