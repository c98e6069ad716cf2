#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gg/activity_model.hpp"
#include "gg/narrator.hpp"
#include "gg/policy.hpp"
#include "gg/reasoner.hpp"
#include "gg/scorer.hpp"
#include "gg/semantic_map.hpp"

namespace gg {

inline constexpr int kDefaultHorizon = 500;
inline constexpr int kDefaultHistogramBinWidth = 10;

struct SimConfig {
  int room_time = 25;  // T_r
  int horizon = kDefaultHorizon;
  std::uint64_t master_seed = 0;
  std::string template_id = "default";
  std::string binding_sequence{kDefaultBindingSequence};
  std::size_t window = kDefaultWindowSize;
  ReasonerOptions reasoner;

  void validate() const;
};

/// Room indices of robot and human at every simulated step.
struct SimState {
  int t = 0;
  std::vector<int> robot_onehot;
  std::vector<int> human_onehot;
  int room_timer = 0;
  std::vector<int> robot_time;  // X_r

  static std::vector<int> onehot(std::size_t room, std::size_t n_rooms);
};

struct RunMetrics {
  int disturbance = 0;                // D_T
  std::optional<int> coverage_time;  // t_c
  bool failed = false;                // F

  bool operator==(const RunMetrics&) const = default;
};

/// Per-step record of a run, for checks and debugging.
struct StepLog {
  std::size_t start_room = 0;
  std::vector<std::size_t> robot;
  std::vector<std::size_t> human;
};

/// One restart. The robot starts in a uniformly random room and replans after
/// every T_r steps in a room: narrate the actions completed so far, score the
/// map, let the policy pick the next partition. Backend errors propagate.
RunMetrics run_once(const SemanticMap& map, const OccupancyTrace& trace, PolicyKind policy,
                    const ScoringBackend& backend, const SimConfig& config, std::size_t restart_index,
                    const TemplateRegistry& templates = TemplateRegistry(), StepLog* log = nullptr);

/// Metrics of an explicit robot room-per-step sequence against a human trace.
RunMetrics evaluate_schedule(const std::vector<std::size_t>& robot, const std::vector<std::size_t>& human,
                             std::size_t room_count, int room_time);

struct RunOutcome {
  std::size_t restart = 0;
  std::uint64_t seed = 0;
  std::optional<RunMetrics> metrics;  // empty when the run aborted
  std::string error;
};

struct Summary {
  std::size_t runs = 0;
  std::size_t completed = 0;
  std::size_t aborted = 0;
  double disturbance_mean = 0.0;
  double disturbance_std = 0.0;  // population
  std::optional<double> coverage_mean;  // successful runs only
  std::optional<double> coverage_std;
  double failure_pct = 0.0;
  int bin_width = kDefaultHistogramBinWidth;
  std::vector<std::size_t> histogram;  // D_T counts over [0, T]
};

struct BatchResult {
  std::vector<RunOutcome> runs;  // ordered by restart index
  Summary summary;
};

Summary summarize(const std::vector<RunOutcome>& runs, int horizon,
                  int bin_width = kDefaultHistogramBinWidth);

/// Restarts 0..restarts-1, optionally spread over `jobs` threads. Aborted runs
/// are kept in the result and excluded from the summary.
BatchResult run_batch(const SemanticMap& map, const OccupancyTrace& trace, PolicyKind policy,
                      const ScoringBackend& backend, const SimConfig& config, std::size_t restarts,
                      std::size_t jobs = 1, const TemplateRegistry& templates = TemplateRegistry());

/// Seed of the policy stream used by restart `index`.
std::uint64_t restart_seed(std::uint64_t master_seed, std::size_t index);

}  // namespace gg
