#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "gg/scorer.hpp"

namespace httplib {
class Client;
class Server;
}  // namespace httplib

namespace gg {

/// Client for the HTTP scoring protocol:
///   GET  /v1/health -> {"status": "ok", "model": str}
///   POST /v1/score  {"prompt": str, "completions": [str]}
///        -> {"results": [{"completion": str, "token_logprobs": [float]}]}
/// The constructor performs the health handshake. Requests are serialized
/// over one connection.
class RemoteBackend final : public ScoringBackend {
 public:
  RemoteBackend(std::string url, std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~RemoteBackend() override;

  std::vector<CompletionScore> score(std::string_view prompt,
                                     const std::vector<std::string>& completions) const override;
  std::string name() const override { return "remote:" + url_; }
  const std::string& model() const { return model_; }

 private:
  std::string url_;
  std::string model_;
  std::unique_ptr<httplib::Client> client_;
  mutable std::mutex mutex_;
};

/// Serves a local backend over the scoring protocol.
class ScoreServer {
 public:
  ScoreServer(std::shared_ptr<const ScoringBackend> backend, std::string model_name);
  ~ScoreServer();

  /// Binds and starts serving on a background thread; returns the port.
  /// Port 0 picks a free port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  /// Serves on the calling thread until stop().
  bool listen(const std::string& host, int port);
  void stop();

 private:
  std::shared_ptr<const ScoringBackend> backend_;
  std::string model_name_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace gg
