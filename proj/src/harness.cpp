#include "gg/harness.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "gg/errors.hpp"
#include "gg/oracle.hpp"
#include "gg/stub_backend.hpp"
#include "json.hpp"

namespace gg {

using nlohmann::json;

DurationTable durations_for(const ExperimentConfig& config) {
  DurationTable table = config.duration_table ? DurationTable::load(*config.duration_table) : DurationTable::defaults();
  for (const auto& [verb, steps] : config.durations) table.set(verb, steps);
  return table;
}

Scenario load_scenario(const ExperimentConfig& config) {
  SemanticMap map = load_map(config.map_path);
  ActivityProgram program = load_program(config.program_path, durations_for(config));
  ItemBinding binding = bind_items(program, map, config.human_seed);
  auto rooms = action_rooms(program, binding, map);
  OccupancyTrace trace = simulate_human(program, binding, map, config.horizon);

  std::string env = config.map_path.filename().string();
  if (auto dot = env.find('.'); dot != std::string::npos) env.resize(dot);
  return {env,
          config.program_path.stem().string(),
          std::move(map),
          std::move(program),
          std::move(binding),
          std::move(rooms),
          std::move(trace)};
}

std::shared_ptr<const ScoringBackend> backend_for(const ExperimentConfig& config, const Scenario& scenario,
                                                  const std::string& template_id,
                                                  const std::string& binding_sequence) {
  StubContext ctx{&scenario.map,     &scenario.program, &scenario.action_rooms,
                  &config.templates, template_id,       binding_sequence,
                  config.window};
  BackendOptions options;
  options.stub_context = &ctx;
  return std::make_shared<CachingBackend>(make_backend(config.scorer, options));
}

SimConfig sim_config_for(const ExperimentConfig& config, int room_time) {
  SimConfig sim;
  sim.room_time = room_time;
  sim.horizon = config.horizon;
  sim.master_seed = config.master_seed;
  sim.template_id = config.template_id;
  sim.binding_sequence = config.binding_sequence;
  sim.window = config.window;
  sim.reasoner.length_normalized = config.length_normalized;
  return sim;
}

std::vector<CellResult> run_cells(const ExperimentConfig& config, const Scenario& scenario,
                                  const ScoringBackend& backend) {
  std::vector<CellResult> cells;
  for (int tr : config.room_times) {
    const SimConfig sim = sim_config_for(config, tr);
    for (PolicyKind policy : config.policies) {
      auto batch = run_batch(scenario.map, scenario.trace, policy, backend, sim, config.restarts, config.jobs,
                             config.templates);
      batch.summary = summarize(batch.runs, config.horizon, config.bin_width);
      cells.push_back({policy, tr, std::move(batch)});
    }
  }
  return cells;
}

void write_runs_csv(std::ostream& out, const Scenario& scenario, const std::vector<CellResult>& cells) {
  out << "restart,policy,env,program,T_r,seed,D_T,t_c,failed\n";
  for (const auto& cell : cells) {
    for (const auto& run : cell.batch.runs) {
      if (!run.metrics) continue;
      out << run.restart << ',' << policy_name(cell.policy) << ',' << scenario.env_name << ','
          << scenario.program_name << ',' << cell.room_time << ',' << run.seed << ',' << run.metrics->disturbance
          << ',';
      if (run.metrics->coverage_time) out << *run.metrics->coverage_time;
      out << ',' << (run.metrics->failed ? 1 : 0) << '\n';
    }
  }
}

namespace {

json summary_to_json(const Summary& s) {
  json j = {{"runs", s.runs},
            {"completed", s.completed},
            {"aborted", s.aborted},
            {"D_T_mean", s.disturbance_mean},
            {"D_T_std", s.disturbance_std},
            {"t_c_mean", s.coverage_mean ? json(*s.coverage_mean) : json(nullptr)},
            {"t_c_std", s.coverage_std ? json(*s.coverage_std) : json(nullptr)},
            {"failure_pct", s.failure_pct},
            {"histogram", {{"bin_width", s.bin_width}, {"counts", s.histogram}}}};
  return j;
}

void ensure_parent(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

std::string format_pm(double mean, double sd) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << mean << "±" << sd;
  return s.str();
}

}  // namespace

std::string summary_json(const ExperimentConfig& config, const Scenario& scenario,
                         const std::vector<CellResult>& cells) {
  json doc = {{"env", scenario.env_name},
              {"program", scenario.program_name},
              {"scorer", config.scorer},
              {"template", config.template_id},
              {"binding", config.binding_sequence},
              {"horizon", config.horizon},
              {"restarts", config.restarts},
              {"master_seed", config.master_seed},
              {"cells", json::array()}};
  for (const auto& cell : cells) {
    json c = summary_to_json(cell.batch.summary);
    c["policy"] = policy_name(cell.policy);
    c["T_r"] = cell.room_time;
    json aborted = json::array();
    for (const auto& r : cell.batch.runs)
      if (!r.metrics) aborted.push_back({{"restart", r.restart}, {"error", r.error}});
    c["aborted_runs"] = aborted;
    doc["cells"].push_back(std::move(c));
  }
  return doc.dump(2) + "\n";
}

int cmd_run(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const Scenario scenario = load_scenario(config);
    const auto backend = backend_for(config, scenario, config.template_id, config.binding_sequence);
    const auto cells = run_cells(config, scenario, *backend);

    std::ostringstream csv;
    write_runs_csv(csv, scenario, cells);
    write_file(config.runs_csv(), csv.str());
    write_file(config.summary_json(), summary_json(config, scenario, cells));

    bool aborted = false;
    for (const auto& cell : cells) {
      const Summary& s = cell.batch.summary;
      log << scenario.env_name << '/' << scenario.program_name << " T_r=" << cell.room_time << ' '
          << policy_name(cell.policy) << ": D_T " << format_pm(s.disturbance_mean, s.disturbance_std)
          << "  F " << std::fixed << std::setprecision(1) << s.failure_pct << "%";
      if (s.aborted) log << "  aborted " << s.aborted;
      log << '\n';
      for (const auto& r : cell.batch.runs) {
        if (r.metrics) continue;
        if (!aborted) err << "backend unavailable: " << r.error << "\n";
        aborted = true;
      }
    }
    return aborted ? kExitBackend : kExitOk;
  });
}

std::vector<PromptStudyRow> prompt_study(const ExperimentConfig& config, const Scenario& scenario) {
  std::vector<PromptStudyRow> rows;
  auto pooled = [&](PolicyKind policy, const ScoringBackend& backend, const std::string& tmpl,
                    const std::string& binding) {
    std::vector<RunOutcome> all;
    for (int tr : config.room_times) {
      SimConfig sim = sim_config_for(config, tr);
      sim.template_id = tmpl;
      sim.binding_sequence = binding;
      auto batch =
          run_batch(scenario.map, scenario.trace, policy, backend, sim, config.restarts, config.jobs, config.templates);
      all.insert(all.end(), batch.runs.begin(), batch.runs.end());
    }
    return summarize(all, config.horizon, config.bin_width);
  };

  {
    const auto backend = backend_for(config, scenario, config.template_id, config.binding_sequence);
    rows.push_back({"naive", "-", "-", "-",
                    pooled(PolicyKind::naive, *backend, config.template_id, config.binding_sequence)});
  }
  for (const auto& p : config.prompts) {
    const auto backend = backend_for(config, scenario, p.template_id, p.binding_sequence);
    rows.push_back({"informed", p.name, p.template_id, p.binding_sequence,
                    pooled(PolicyKind::informed_avoidance, *backend, p.template_id, p.binding_sequence)});
  }
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

void write_prompt_study_csv(std::ostream& out, const std::vector<PromptStudyRow>& rows) {
  out << "policy,prompt,narration,binding,D_T_mean,D_T_std,F_pct,runs\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.policy << ',' << r.prompt << ',' << csv_field(r.narration) << ',' << csv_field(r.binding_sequence)
        << ',' << r.summary.disturbance_mean << ',' << r.summary.disturbance_std << ',' << r.summary.failure_pct
        << ',' << r.summary.completed << '\n';
  }
}

int cmd_prompt_study(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const Scenario scenario = load_scenario(config);
    const auto rows = prompt_study(config, scenario);

    std::ostringstream csv;
    write_prompt_study_csv(csv, rows);
    write_file(config.csv_path.value_or(config.out_dir / "prompt_study.csv"), csv.str());

    bool aborted = false;
    out << std::left << std::setw(10) << "policy" << std::setw(8) << "prompt" << std::setw(10) << "narration"
        << std::setw(52) << "binding" << std::setw(16) << "D_T" << "F[%]\n";
    for (const auto& r : rows) {
      out << std::left << std::setw(10) << r.policy << std::setw(8) << r.prompt << std::setw(10) << r.narration
          << std::setw(52) << ("\"" + r.binding_sequence + "\"") << std::setw(16)
          << format_pm(r.summary.disturbance_mean, r.summary.disturbance_std) << std::fixed << std::setprecision(1)
          << r.summary.failure_pct << '\n';
      aborted = aborted || r.summary.aborted > 0;
    }
    if (aborted) err << "backend unavailable: some runs aborted\n";
    return aborted ? kExitBackend : kExitOk;
  });
}

void write_score_csv(std::ostream& out, const RelevancyScores& scores) {
  out << "kind,id_or_label,score\n";
  out << std::setprecision(17);
  auto emit = [&](const char* kind, auto rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    for (const auto& [key, value] : rows) out << kind << ',' << csv_field(key) << ',' << value << '\n';
  };
  std::vector<std::pair<std::string, double>> completions(scores.completion_scores.begin(),
                                                          scores.completion_scores.end());
  emit("completion", completions);
  std::vector<std::pair<std::string, double>> items;
  for (const auto& [id, s] : scores.item_scores) items.emplace_back(std::to_string(id), s);
  emit("item", items);
  std::vector<std::pair<std::string, double>> partitions;
  for (const auto& [id, s] : scores.partition_scores) partitions.emplace_back(std::to_string(id), s);
  emit("partition", partitions);
}

int cmd_score(const ScoreRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!std::filesystem::exists(request.map_path))
      throw ConfigError("map file not found: " + request.map_path.string());
    const SemanticMap map = load_map(request.map_path);
    const DurationTable durations =
        request.duration_table ? DurationTable::load(*request.duration_table) : DurationTable::defaults();

    Narration narration{"", request.template_id};
    if (request.narration) {
      narration.text = *request.narration;
    } else if (request.history) {
      const ActivityProgram past = load_program(*request.history, durations);
      const ItemBinding binding = bind_items(past, map, request.human_seed);
      const auto rooms = action_rooms(past, binding, map);
      ObservationHistory history;
      history.window_size = request.window;
      int t = 0;
      for (std::size_t k = 0; k < past.actions.size(); ++k) {
        t += past.actions[k].duration;
        history.window.push_back({t, past.actions[k], rooms[k], map.rooms()[rooms[k]].name});
      }
      narration = narrate(history, request.template_id, request.templates);
    } else {
      narration = narrate(ObservationHistory{}, request.template_id, request.templates);
    }

    std::optional<ActivityProgram> program;
    ItemBinding program_binding;
    std::vector<std::size_t> program_rooms;
    if (request.program) {
      program = load_program(*request.program, durations);
      program_binding = bind_items(*program, map, request.human_seed);
      program_rooms = action_rooms(*program, program_binding, map);
    }
    StubContext ctx{&map,
                    program ? &*program : nullptr,
                    program ? &program_rooms : nullptr,
                    &request.templates,
                    request.template_id,
                    request.binding_sequence,
                    request.window};
    BackendOptions options;
    options.stub_context = &ctx;
    const auto backend = make_backend(request.scorer, options);

    ReasonerOptions ropts;
    ropts.length_normalized = request.length_normalized;
    const auto scores = compute_relevancy(map, PromptSpec{narration, request.binding_sequence}, *backend, ropts);
    write_score_csv(out, scores);
    return kExitOk;
  });
}

int cmd_oracle(const ExperimentConfig& config, std::optional<std::size_t> start_room, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const Scenario scenario = load_scenario(config);
    out << "T_r,start,feasible,min_D_T,sequence,min_D_T_uncovered,sequence_uncovered,enumerated\n";
    for (int tr : config.room_times) {
      const auto r = offline_oracle(scenario.map, scenario.trace, sim_config_for(config, tr), start_room);
      auto seq = [](const std::vector<std::size_t>& s) {
        std::string o;
        for (std::size_t k = 0; k < s.size(); ++k) o += (k ? " " : "") + std::to_string(s[k]);
        return o;
      };
      out << tr << ',' << (start_room ? std::to_string(*start_room) : "any") << ',' << (r.feasible ? 1 : 0) << ','
          << (r.feasible ? std::to_string(r.min_disturbance) : "") << ',' << seq(r.sequence) << ','
          << r.min_disturbance_any << ',' << seq(r.sequence_any) << ',' << r.enumerated << '\n';
    }
    return kExitOk;
  });
}

int cmd_hist(const std::filesystem::path& runs_csv, int bin_width, int horizon, std::ostream& out,
             std::ostream& err) {
  return guarded(err, [&] {
    if (bin_width < 1) throw ConfigError("bin width must be >= 1");
    std::ifstream in(runs_csv);
    if (!in) throw ConfigError("cannot open runs CSV " + runs_csv.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError(runs_csv.string() + ": empty file");
    std::vector<std::string> header;
    {
      std::istringstream h(line);
      std::string f;
      while (std::getline(h, f, ',')) header.push_back(f);
    }
    auto column = [&](const std::string& name) {
      auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw ParseError(runs_csv.string() + ": missing column '" + name + "'");
      return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_policy = column("policy"), c_tr = column("T_r"), c_d = column("D_T");

    std::map<std::string, std::vector<int>> groups;
    int max_d = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::istringstream row(line);
      std::string f;
      while (std::getline(row, f, ',')) fields.push_back(f);
      if (fields.size() <= std::max({c_policy, c_tr, c_d}))
        throw ParseError(runs_csv.string() + ": line " + std::to_string(line_no) + " has too few fields");
      int d = 0;
      try {
        d = std::stoi(fields[c_d]);
      } catch (const std::exception&) {
        throw ParseError(runs_csv.string() + ": line " + std::to_string(line_no) + ": bad D_T");
      }
      groups[fields[c_policy] + "/T_r=" + fields[c_tr]].push_back(d);
      max_d = std::max(max_d, d);
    }
    const int range = horizon > 0 ? horizon : max_d + 1;
    const std::size_t bins = static_cast<std::size_t>(std::max(1, (range + bin_width - 1) / bin_width));

    out << "# bin_start";
    for (const auto& [name, _] : groups) out << ' ' << name;
    out << '\n';
    std::vector<std::vector<std::size_t>> counts;
    for (const auto& [_, ds] : groups) {
      std::vector<std::size_t> c(bins, 0);
      for (int d : ds) ++c[std::min(bins - 1, static_cast<std::size_t>(d / bin_width))];
      counts.push_back(std::move(c));
    }
    for (std::size_t b = 0; b < bins; ++b) {
      out << b * static_cast<std::size_t>(bin_width);
      for (const auto& c : counts) out << ' ' << c[b];
      out << '\n';
    }
    return kExitOk;
  });
}

}  // namespace gg
