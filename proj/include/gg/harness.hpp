#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gg/activity_model.hpp"
#include "gg/config.hpp"
#include "gg/scorer.hpp"
#include "gg/semantic_map.hpp"
#include "gg/sim_engine.hpp"

namespace gg {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitBackend = 3,
  kExitOracleTooLarge = 4,
};

/// Map, program and the human behaviour derived from them.
struct Scenario {
  std::string env_name;
  std::string program_name;
  SemanticMap map;
  ActivityProgram program;
  ItemBinding binding;
  std::vector<std::size_t> action_rooms;
  OccupancyTrace trace;
};

DurationTable durations_for(const ExperimentConfig& config);
Scenario load_scenario(const ExperimentConfig& config);

/// Backend for one (template, binding sequence) prompt, wrapped in a cache.
std::shared_ptr<const ScoringBackend> backend_for(const ExperimentConfig& config, const Scenario& scenario,
                                                  const std::string& template_id,
                                                  const std::string& binding_sequence);

SimConfig sim_config_for(const ExperimentConfig& config, int room_time);

/// One (policy, T_r) cell of a run.
struct CellResult {
  PolicyKind policy;
  int room_time;
  BatchResult batch;
};

std::vector<CellResult> run_cells(const ExperimentConfig& config, const Scenario& scenario,
                                  const ScoringBackend& backend);

void write_runs_csv(std::ostream& out, const Scenario& scenario, const std::vector<CellResult>& cells);
std::string summary_json(const ExperimentConfig& config, const Scenario& scenario,
                         const std::vector<CellResult>& cells);

/// Row of the prompt study table.
struct PromptStudyRow {
  std::string policy;
  std::string prompt;
  std::string narration;
  std::string binding_sequence;
  Summary summary;  // pooled over all room times
};

std::vector<PromptStudyRow> prompt_study(const ExperimentConfig& config, const Scenario& scenario);
void write_prompt_study_csv(std::ostream& out, const std::vector<PromptStudyRow>& rows);

struct ScoreRequest {
  std::filesystem::path map_path;
  std::optional<std::string> narration;          // literal narration text
  std::optional<std::filesystem::path> history;  // program-format file of past actions
  std::optional<std::filesystem::path> program;  // context for oracle-next-room
  std::string template_id = "default";
  std::string binding_sequence{kDefaultBindingSequence};
  std::string scorer = "stub:uniform";
  std::size_t window = kDefaultWindowSize;
  bool length_normalized = false;
  std::uint64_t human_seed = 0;
  std::optional<std::filesystem::path> duration_table;
  TemplateRegistry templates;
};

/// `kind,id_or_label,score` rows, each kind sorted by descending score then
/// label or id.
void write_score_csv(std::ostream& out, const RelevancyScores& scores);

// Subcommands. Each returns the process exit code and reports errors on err.
int cmd_run(const ExperimentConfig& config, std::ostream& log, std::ostream& err);
int cmd_prompt_study(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_score(const ScoreRequest& request, std::ostream& out, std::ostream& err);
int cmd_oracle(const ExperimentConfig& config, std::optional<std::size_t> start_room, std::ostream& out,
               std::ostream& err);
int cmd_hist(const std::filesystem::path& runs_csv, int bin_width, int horizon, std::ostream& out,
             std::ostream& err);

/// Runs fn and maps library exceptions to exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn);

}  // namespace gg

#include "gg/harness_inl.hpp"
