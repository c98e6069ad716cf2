#include "gg/remote_backend.hpp"

#include "gg/errors.hpp"
#include "httplib.h"
#include "json.hpp"

namespace gg {

using nlohmann::json;

RemoteBackend::RemoteBackend(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)) {
  if (url_.empty()) throw ConfigError("remote backend url is empty");
  client_ = std::make_unique<httplib::Client>(url_);
  if (!client_->is_valid()) throw ConfigError("invalid remote backend url '" + url_ + "'");
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client_->set_connection_timeout(secs.count(), usecs.count());
  client_->set_read_timeout(secs.count(), usecs.count());
  client_->set_write_timeout(secs.count(), usecs.count());

  auto res = client_->Get("/v1/health");
  if (!res)
    throw BackendError("remote handshake with " + url_ + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw BackendError("remote handshake with " + url_ + " failed: HTTP " + std::to_string(res->status));
  try {
    const auto body = json::parse(res->body);
    if (body.at("status").get<std::string>() != "ok")
      throw BackendError("remote backend at " + url_ + " reports status '" +
                         body.at("status").get<std::string>() + "'");
    model_ = body.value("model", std::string());
  } catch (const json::exception& e) {
    throw BackendError("remote handshake with " + url_ + ": malformed health response: " + e.what());
  }
}

RemoteBackend::~RemoteBackend() = default;

std::vector<CompletionScore> RemoteBackend::score(std::string_view prompt,
                                                  const std::vector<std::string>& completions) const {
  const json request = {{"prompt", std::string(prompt)}, {"completions", completions}};
  httplib::Result res;
  {
    std::lock_guard lock(mutex_);
    res = client_->Post("/v1/score", request.dump(), "application/json");
  }
  if (!res) throw BackendError("remote backend " + url_ + " unavailable: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw BackendError("remote backend " + url_ + " refused request: HTTP " + std::to_string(res->status) +
                       (res->body.empty() ? "" : " " + res->body));
  std::vector<CompletionScore> out;
  try {
    const auto body = json::parse(res->body);
    for (const auto& r : body.at("results"))
      out.push_back(CompletionScore::from_logprobs(r.at("completion").get<std::string>(),
                                                   r.at("token_logprobs").get<std::vector<double>>()));
  } catch (const json::exception& e) {
    throw BackendError("remote backend " + url_ + ": malformed score response: " + e.what());
  }
  return out;
}

ScoreServer::ScoreServer(std::shared_ptr<const ScoringBackend> backend, std::string model_name)
    : backend_(std::move(backend)),
      model_name_(std::move(model_name)),
      server_(std::make_unique<httplib::Server>()) {
  server_->Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(json{{"status", "ok"}, {"model", model_name_}}.dump(), "application/json");
  });
  server_->Post("/v1/score", [this](const httplib::Request& req, httplib::Response& res) {
    json results = json::array();
    try {
      const auto body = json::parse(req.body);
      const auto prompt = body.at("prompt").get<std::string>();
      const auto completions = body.at("completions").get<std::vector<std::string>>();
      for (const auto& s : backend_->score(prompt, completions))
        results.push_back({{"completion", s.completion}, {"token_logprobs", s.token_logprobs}});
    } catch (const json::exception& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
      return;
    } catch (const Error& e) {
      res.status = 422;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
      return;
    }
    res.set_content(json{{"results", results}}.dump(), "application/json");
  });
}

ScoreServer::~ScoreServer() { stop(); }

int ScoreServer::start(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw BackendError("cannot bind score server to " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

bool ScoreServer::listen(const std::string& host, int port) { return server_->listen(host, port); }

void ScoreServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace gg
