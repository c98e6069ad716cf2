// Writes an n-gram training corpus from activity programs. Each line narrates
// a run of consecutive actions with the default template, appends a binding
// sequence and names the label the human interacts with next.

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

#include "gg/activity_model.hpp"
#include "gg/narrator.hpp"

namespace {

std::string next_label(const gg::ActivityProgram& program, std::size_t k) {
  const std::size_t n = program.actions.size();
  for (std::size_t step = 1; step <= n; ++step) {
    const auto& action = program.actions[(k + step) % n];
    if (!action.item_refs.empty()) return action.item_refs.front().label;
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate an n-gram corpus from activity programs"};
  std::vector<std::string> programs;
  std::string out_path;
  std::size_t window = gg::kDefaultWindowSize;
  std::vector<std::string> bindings{"Next, they will go to the ", "Next, the human will go to the ",
                                    "The next object they are walking to is the ",
                                    "After this, they are going to interact with the "};
  app.add_option("programs", programs, "activity program files")->required()->check(CLI::ExistingFile);
  app.add_option("-o,--out", out_path, "output corpus path")->required();
  app.add_option("--window", window, "longest narrated run of actions");
  app.add_option("--binding", bindings, "binding sequences (replaces the defaults)");
  CLI11_PARSE(app, argc, argv);

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 2;
  }
  const gg::TemplateRegistry registry;
  const auto& tmpl = registry.get("default");
  const auto durations = gg::DurationTable::defaults();
  for (const auto& path : programs) {
    const auto program = gg::load_program(path, durations);
    const std::size_t n = program.actions.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::string label = next_label(program, k);
      if (label.empty()) continue;
      for (std::size_t m = 1; m <= window; ++m) {
        std::string text = m > k ? tmpl.header : std::string();
        for (std::size_t j = m; j-- > 0;) {
          gg::CompletedAction done;
          done.action = program.actions[(k + n * window - j) % n];
          text += gg::narrate_action(done, tmpl);
        }
        for (const auto& binding : bindings) out << text << binding << label << " .\n";
      }
    }
  }
  return 0;
}
