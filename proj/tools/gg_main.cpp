// gg: run human-aware coverage experiments driven by grounded completion
// scores.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gg/errors.hpp"
#include "gg/harness.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string map, program, policy, scorer, tmpl, binding, room_time, out, csv, summary, duration_table;
  std::size_t restarts = 0, jobs = 0, window = 0;
  std::uint64_t seed = 0, human_seed = 0;
  int horizon = 0, bin_width = 0;
  bool length_normalized = false;

  std::vector<std::pair<std::string, CLI::Option*>> options;

  void add(CLI::App& app) {
    app.add_option("--config", config, "TOML-style config file; flags override it");
    options = {
        {"map", app.add_option("--map", map, "semantic map JSON")},
        {"program", app.add_option("--program", program, "activity program file")},
        {"policy", app.add_option("--policy", policy, "naive,greedy,informed (comma-separated)")},
        {"scorer", app.add_option("--scorer", scorer, "stub:<fixture> | ngram:<corpus>,<order> | remote:<url>")},
        {"template", app.add_option("--template", tmpl, "narration template id")},
        {"binding", app.add_option("--binding", binding, "binding sequence appended to the narration")},
        {"room-time", app.add_option("--room-time", room_time, "T_r values, comma-separated")},
        {"restarts", app.add_option("--restarts", restarts, "restarts per cell")},
        {"seed", app.add_option("--seed", seed, "master seed")},
        {"human-seed", app.add_option("--human-seed", human_seed, "seed of the item binding")},
        {"horizon", app.add_option("--horizon", horizon, "simulated steps T")},
        {"window", app.add_option("--window", window, "narration window n_h")},
        {"jobs", app.add_option("--jobs", jobs, "worker threads")},
        {"duration-table", app.add_option("--duration-table", duration_table, "verb duration table")},
        {"out", app.add_option("--out", out, "output directory")},
        {"csv", app.add_option("--csv", csv, "per-restart CSV path")},
        {"summary", app.add_option("--summary", summary, "summary JSON path")},
        {"bin-width", app.add_option("--bin-width", bin_width, "histogram bin width")},
        {"length-normalized", app.add_flag("--length-normalized", length_normalized,
                                           "score completions per token instead of per sequence")},
    };
  }

  gg::ExperimentConfig build() const {
    gg::ExperimentConfig cfg;
    if (!config.empty()) {
      const std::filesystem::path path(config);
      cfg.apply(gg::ConfigDocument::load(path), path.parent_path());
    }
    gg::ConfigDocument overrides = gg::ConfigDocument::parse(render_overrides());
    cfg.apply(overrides);
    return cfg;
  }

 private:
  static std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      if (c == '\n') {
        out += "\\n";
        continue;
      }
      out.push_back(c);
    }
    return out + "\"";
  }

  std::string render_overrides() const {
    std::string doc;
    for (const auto& [key, opt] : options) {
      if (opt->count() == 0) continue;
      std::string value = opt->as<std::string>();
      if (key == "length-normalized") value = length_normalized ? "true" : "false";
      doc += key + " = " + quote(value) + "\n";
    }
    return doc;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gg: grounded next-interaction scoring and human-aware coverage simulation"};
  app.require_subcommand(1);

  CommonFlags run_flags, study_flags, oracle_flags;

  auto* run = app.add_subcommand("run", "simulate policies over restarts, write CSV and summary JSON");
  run_flags.add(*run);

  auto* study = app.add_subcommand("prompt-study", "compare narration/binding-sequence prompt variants");
  study_flags.add(*study);

  auto* oracle = app.add_subcommand("oracle", "exhaustive minimum-disturbance schedule for a known human trace");
  oracle_flags.add(*oracle);
  long long start_room = -1;
  oracle->add_option("--start", start_room, "fix the robot's start room");

  auto* score = app.add_subcommand("score", "print completion, item and partition scores as CSV");
  gg::ScoreRequest req;
  std::string score_map, narration_text, history, score_program, score_durations;
  score->add_option("--map", score_map, "semantic map JSON")->required();
  auto* narration_opt = score->add_option("--narration", narration_text, "narration text");
  auto* history_opt = score->add_option("--history", history, "program-format file of past actions");
  narration_opt->excludes(history_opt);
  score->add_option("--program", score_program, "activity program (context for stub:oracle-next-room)");
  score->add_option("--template", req.template_id, "narration template id");
  score->add_option("--binding", req.binding_sequence, "binding sequence");
  score->add_option("--scorer", req.scorer, "backend spec");
  score->add_option("--window", req.window, "narration window n_h");
  score->add_option("--human-seed", req.human_seed, "seed of the item binding");
  score->add_option("--duration-table", score_durations, "verb duration table");
  score->add_flag("--length-normalized", req.length_normalized, "score completions per token");

  auto* hist = app.add_subcommand("hist", "gnuplot-ready D_T histogram columns from a runs CSV");
  std::string hist_csv;
  int hist_bin = 10, hist_horizon = 0;
  hist->add_option("--csv", hist_csv, "per-restart CSV from `gg run`")->required();
  hist->add_option("--bin-width", hist_bin, "bin width in steps");
  hist->add_option("--horizon", hist_horizon, "histogram range [0, horizon]; default max D_T");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : gg::kExitConfig;
  }

  auto with_config = [](const CommonFlags& flags, auto&& body) {
    return gg::guarded(std::cerr, [&] { return body(flags.build()); });
  };

  if (run->parsed())
    return with_config(run_flags, [](const gg::ExperimentConfig& c) { return gg::cmd_run(c, std::cout, std::cerr); });
  if (study->parsed())
    return with_config(study_flags,
                       [](const gg::ExperimentConfig& c) { return gg::cmd_prompt_study(c, std::cout, std::cerr); });
  if (oracle->parsed())
    return with_config(oracle_flags, [&](const gg::ExperimentConfig& c) {
      std::optional<std::size_t> start;
      if (start_room >= 0) start = static_cast<std::size_t>(start_room);
      return gg::cmd_oracle(c, start, std::cout, std::cerr);
    });
  if (score->parsed()) {
    req.map_path = score_map;
    if (narration_opt->count()) req.narration = narration_text;
    if (history_opt->count()) req.history = history;
    if (!score_program.empty()) req.program = score_program;
    if (!score_durations.empty()) req.duration_table = score_durations;
    return gg::cmd_score(req, std::cout, std::cerr);
  }
  if (hist->parsed()) return gg::cmd_hist(hist_csv, hist_bin, hist_horizon, std::cout, std::cerr);
  return gg::kExitConfig;
}
