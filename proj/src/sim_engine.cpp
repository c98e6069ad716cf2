#include "gg/sim_engine.hpp"

#include <atomic>
#include <cassert>
#include <cmath>
#include <numeric>
#include <thread>

#include "gg/errors.hpp"

namespace gg {

void SimConfig::validate() const {
  if (room_time < 1) throw ConfigError("room time must be >= 1");
  if (horizon < room_time) throw ConfigError("horizon must be >= room time");
  if (window < 1) throw ConfigError("narration window must be >= 1");
}

std::vector<int> SimState::onehot(std::size_t room, std::size_t n_rooms) {
  std::vector<int> v(n_rooms, 0);
  v.at(room) = 1;
  return v;
}

std::uint64_t restart_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, index);
}

namespace {

bool covered(const std::vector<int>& robot_time, int room_time) {
  for (int x : robot_time)
    if (x < room_time) return false;
  return true;
}

int dot(const std::vector<int>& a, const std::vector<int>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0);
}

}  // namespace

RunMetrics run_once(const SemanticMap& map, const OccupancyTrace& trace, PolicyKind policy,
                    const ScoringBackend& backend, const SimConfig& config, std::size_t restart_index,
                    const TemplateRegistry& templates, StepLog* log) {
  config.validate();
  if (trace.horizon() < config.horizon)
    throw ValidationError("human trace covers " + std::to_string(trace.horizon()) +
                          " steps, horizon is " + std::to_string(config.horizon));
  if (map.partitions().empty()) throw ValidationError("map has no partitions to plan over");
  const std::size_t n_rooms = map.room_count();
  const auto completions = build_completion_set(map);

  Rng rng(restart_seed(config.master_seed, restart_index));
  std::size_t room = rng.uniform_index(n_rooms);

  SimState state;
  state.robot_onehot = SimState::onehot(room, n_rooms);
  state.robot_time.assign(n_rooms, 0);
  state.room_timer = config.room_time;
  if (log) {
    log->start_room = room;
    log->robot.clear();
    log->human.clear();
  }

  RunMetrics metrics;
  for (int t = 0; t < config.horizon; ++t) {
    if (state.room_timer == 0) {
      int next = map.partitions().front().id;
      if (map.partitions().size() > 1) {
        std::map<int, double> scores;
        if (policy == PolicyKind::naive) {
          // The naive policy ignores scores; skip the backend round trip.
          for (const auto& p : map.partitions()) scores[p.id] = 0.0;
        } else {
          PromptSpec prompt{
              narrate(ObservationHistory::at(trace, t, config.window), config.template_id, templates),
              config.binding_sequence};
          scores = compute_relevancy(map, completions, prompt, backend, config.reasoner).partition_scores;
        }
        next = select_next_partition(policy, scores, rng);
      }
      room = map.partition(next).room_index;
      state.robot_onehot = SimState::onehot(room, n_rooms);
      state.room_timer = config.room_time;
    }
    state.t = t;
    state.human_onehot = SimState::onehot(trace.rooms[static_cast<std::size_t>(t)], n_rooms);
    assert(std::accumulate(state.robot_onehot.begin(), state.robot_onehot.end(), 0) == 1);
    assert(std::accumulate(state.human_onehot.begin(), state.human_onehot.end(), 0) == 1);

    metrics.disturbance += dot(state.robot_onehot, state.human_onehot);
    ++state.robot_time[room];
    --state.room_timer;
    if (!metrics.coverage_time && covered(state.robot_time, config.room_time)) metrics.coverage_time = t + 1;
    if (log) {
      log->robot.push_back(room);
      log->human.push_back(trace.rooms[static_cast<std::size_t>(t)]);
    }
  }
  metrics.failed = !metrics.coverage_time;
  return metrics;
}

RunMetrics evaluate_schedule(const std::vector<std::size_t>& robot, const std::vector<std::size_t>& human,
                             std::size_t room_count, int room_time) {
  if (human.size() < robot.size()) throw ValidationError("human trace shorter than robot schedule");
  RunMetrics m;
  std::vector<int> x(room_count, 0);
  for (std::size_t t = 0; t < robot.size(); ++t) {
    m.disturbance += robot[t] == human[t] ? 1 : 0;
    ++x.at(robot[t]);
    if (!m.coverage_time && covered(x, room_time)) m.coverage_time = static_cast<int>(t) + 1;
  }
  m.failed = !m.coverage_time;
  return m;
}

Summary summarize(const std::vector<RunOutcome>& runs, int horizon, int bin_width) {
  if (bin_width < 1) throw ConfigError("histogram bin width must be >= 1");
  Summary s;
  s.runs = runs.size();
  s.bin_width = bin_width;
  s.histogram.assign(static_cast<std::size_t>(std::max(1, (horizon + bin_width - 1) / bin_width)), 0);

  double d_sum = 0.0, c_sum = 0.0;
  std::size_t successes = 0, failures = 0;
  for (const auto& r : runs) {
    if (!r.metrics) {
      ++s.aborted;
      continue;
    }
    ++s.completed;
    d_sum += r.metrics->disturbance;
    const auto bin = std::min<std::size_t>(static_cast<std::size_t>(r.metrics->disturbance / bin_width),
                                           s.histogram.size() - 1);
    ++s.histogram[bin];
    if (r.metrics->coverage_time) {
      ++successes;
      c_sum += *r.metrics->coverage_time;
    } else {
      ++failures;
    }
  }
  if (s.completed == 0) return s;
  s.disturbance_mean = d_sum / static_cast<double>(s.completed);
  s.failure_pct = 100.0 * static_cast<double>(failures) / static_cast<double>(s.completed);
  if (successes) s.coverage_mean = c_sum / static_cast<double>(successes);

  double d_var = 0.0, c_var = 0.0;
  for (const auto& r : runs) {
    if (!r.metrics) continue;
    d_var += std::pow(r.metrics->disturbance - s.disturbance_mean, 2);
    if (r.metrics->coverage_time) c_var += std::pow(*r.metrics->coverage_time - *s.coverage_mean, 2);
  }
  s.disturbance_std = std::sqrt(d_var / static_cast<double>(s.completed));
  if (successes) s.coverage_std = std::sqrt(c_var / static_cast<double>(successes));
  return s;
}

BatchResult run_batch(const SemanticMap& map, const OccupancyTrace& trace, PolicyKind policy,
                      const ScoringBackend& backend, const SimConfig& config, std::size_t restarts,
                      std::size_t jobs, const TemplateRegistry& templates) {
  if (restarts < 1) throw ConfigError("restarts must be >= 1");
  config.validate();
  BatchResult result;
  result.runs.resize(restarts);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < restarts; i = next++) {
      RunOutcome& out = result.runs[i];
      out.restart = i;
      out.seed = restart_seed(config.master_seed, i);
      try {
        out.metrics = run_once(map, trace, policy, backend, config, i, templates);
      } catch (const BackendError& e) {
        out.error = e.what();
      } catch (const TokenizationError& e) {
        out.error = e.what();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, restarts));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  result.summary = summarize(result.runs, config.horizon);
  return result;
}

}  // namespace gg
