#include "gg/scorer.hpp"

#include <cstdlib>
#include <filesystem>

#include "gg/activity_model.hpp"
#include "gg/errors.hpp"
#include "gg/ngram_backend.hpp"
#include "gg/remote_backend.hpp"
#include "gg/stub_backend.hpp"

namespace gg {

CompletionScore CompletionScore::from_logprobs(std::string completion, std::vector<double> logprobs) {
  double total = 0.0;
  for (double lp : logprobs) total += lp;
  return {std::move(completion), std::move(logprobs), total};
}

double CompletionScore::per_token_probability() const {
  if (token_logprobs.empty()) return 1.0;
  return std::exp(total_logprob / static_cast<double>(token_logprobs.size()));
}

std::vector<CompletionScore> score_completions(std::string_view prompt,
                                               const std::vector<std::string>& completions,
                                               const ScoringBackend& backend) {
  if (completions.empty()) throw ValidationError("no completions to score");
  auto scores = backend.score(prompt, completions);
  if (scores.size() != completions.size())
    throw BackendError(backend.name() + " returned " + std::to_string(scores.size()) + " results for " +
                       std::to_string(completions.size()) + " completions");
  for (std::size_t k = 0; k < scores.size(); ++k) {
    auto& s = scores[k];
    if (s.completion != completions[k])
      throw BackendError(backend.name() + " returned results out of order at '" + completions[k] + "'");
    if (s.token_logprobs.empty())
      throw TokenizationError("completion '" + s.completion + "' produced no tokens");
    for (double lp : s.token_logprobs) {
      if (!(lp <= 0.0))
        throw BackendError(backend.name() + " returned a log-probability above 0 for '" + s.completion + "'");
    }
    s = CompletionScore::from_logprobs(std::move(s.completion), std::move(s.token_logprobs));
  }
  return scores;
}

std::vector<CompletionScore> CachingBackend::score(std::string_view prompt,
                                                   const std::vector<std::string>& completions) const {
  std::string key(prompt);
  for (const auto& c : completions) {
    key.push_back('\0');
    key += c;
  }
  {
    std::lock_guard lock(mutex_);
    auto found = cache_.find(key);
    if (found != cache_.end()) return found->second;
  }
  auto scores = inner_->score(prompt, completions);
  std::lock_guard lock(mutex_);
  return cache_.emplace(std::move(key), std::move(scores)).first->second;
}

std::shared_ptr<const ScoringBackend> make_backend(std::string_view spec, const BackendOptions& options) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("backend spec '" + std::string(spec) + "' lacks a scheme (stub:, ngram:, remote:)");
  const std::string scheme(spec.substr(0, colon));
  const std::string arg(spec.substr(colon + 1));

  if (scheme == "stub") {
    if (arg == "oracle-next-room") {
      if (!options.stub_context)
        throw ConfigError("stub 'oracle-next-room' needs a map and activity program");
      return std::make_shared<StubBackend>(make_next_room_table(*options.stub_context), "stub:oracle-next-room");
    }
    if (arg == "uniform") {
      StubTable t;
      t.default_token_prob = 0.01;
      return std::make_shared<StubBackend>(std::move(t), "stub:uniform");
    }
    if (!std::filesystem::exists(arg)) throw ConfigError("stub fixture not found: " + arg);
    return std::make_shared<StubBackend>(StubTable::load(arg), "stub:" + arg);
  }
  if (scheme == "ngram") {
    const auto comma = arg.rfind(',');
    if (comma == std::string::npos) throw ConfigError("ngram spec must be ngram:<corpus-path>,<order>");
    const std::string path = arg.substr(0, comma);
    std::size_t order = 0;
    try {
      std::size_t used = 0;
      const long v = std::stol(arg.substr(comma + 1), &used);
      if (used != arg.size() - comma - 1 || v < 1) throw std::invalid_argument("order");
      order = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ConfigError("ngram order must be a positive integer in '" + std::string(spec) + "'");
    }
    if (!std::filesystem::exists(path)) throw ConfigError("n-gram corpus not found: " + path);
    return std::make_shared<NgramBackend>(NgramBackend::from_file(path, order));
  }
  if (scheme == "remote") {
    std::string url = arg;
    if (url.empty()) {
      if (const char* env = std::getenv("GG_SCORER_URL")) url = env;
    }
    if (url.empty()) throw ConfigError("remote backend needs a url or GG_SCORER_URL");
    return std::make_shared<RemoteBackend>(url, options.timeout);
  }
  throw ConfigError("unknown backend scheme '" + scheme + "'");
}

}  // namespace gg
