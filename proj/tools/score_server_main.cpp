// Serves a local backend (n-gram or stub fixture) over the HTTP scoring
// protocol, e.g. for exercising `remote:` backends without a neural model.

#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "gg/errors.hpp"
#include "gg/remote_backend.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gg_score_server: HTTP log-probability server"};
  std::string spec, host = "127.0.0.1", model;
  int port = 8731;
  app.add_option("--backend", spec, "ngram:<corpus>,<order> or stub:<fixture>")->required();
  app.add_option("--host", host, "bind address");
  app.add_option("--port", port, "port");
  app.add_option("--model", model, "model name reported by /v1/health");
  CLI11_PARSE(app, argc, argv);

  try {
    auto backend = gg::make_backend(spec);
    gg::ScoreServer server(backend, model.empty() ? backend->name() : model);
    std::cerr << "serving " << backend->name() << " on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) {
      std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
      return 1;
    }
  } catch (const gg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
