#include "gg/ngram_backend.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gg/errors.hpp"

namespace gg {

NgramModel::NgramModel(std::string_view corpus, std::size_t order) : order_(order) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
  std::istringstream in{std::string(corpus)};
  std::string line;
  std::vector<std::vector<int>> sentences;
  while (std::getline(in, line)) {
    auto words = split_tokens(line);
    if (words.empty()) continue;
    std::vector<int> ids;
    ids.reserve(words.size());
    for (const auto& w : words) ids.push_back(vocab_.add(w));
    sentences.push_back(std::move(ids));
  }
  for (const auto& ids : sentences) {
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const auto ctx = context_of(std::span<const int>(ids).first(j));
      auto& cc = counts_[key_of(ctx)];
      cc.total += 1.0;
      cc.next[ids[j]] += 1.0;
    }
  }
}

std::vector<int> NgramModel::context_of(std::span<const int> history) const {
  const std::size_t n = order_ - 1;
  std::vector<int> ctx(n, kStart);
  const std::size_t take = std::min(n, history.size());
  for (std::size_t k = 0; k < take; ++k) ctx[n - take + k] = history[history.size() - take + k];
  return ctx;
}

std::string NgramModel::key_of(std::span<const int> context) {
  std::string key(context.size() * sizeof(int), '\0');
  if (!context.empty()) std::memcpy(key.data(), context.data(), key.size());
  return key;
}

double NgramModel::count(std::span<const int> context, int next) const {
  auto found = counts_.find(key_of(context));
  if (found == counts_.end()) return 0.0;
  auto hit = found->second.next.find(next);
  return hit == found->second.next.end() ? 0.0 : hit->second;
}

double NgramModel::context_total(std::span<const int> context) const {
  auto found = counts_.find(key_of(context));
  return found == counts_.end() ? 0.0 : found->second.total;
}

double NgramModel::log_prob(std::span<const int> context, int next) const {
  const double v = static_cast<double>(vocabulary_size());
  return std::log(count(context, next) + 1.0) - std::log(context_total(context) + v);
}

NgramBackend::NgramBackend(std::string_view corpus, std::size_t order, std::string name)
    : model_(corpus, order), name_(std::move(name)) {}

NgramBackend NgramBackend::from_file(const std::filesystem::path& corpus, std::size_t order) {
  std::ifstream in(corpus);
  if (!in) throw ConfigError("cannot open n-gram corpus " + corpus.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return NgramBackend(buf.str(), order,
                      "ngram:" + corpus.filename().string() + "," + std::to_string(order));
}

std::vector<CompletionScore> NgramBackend::score(
    std::string_view prompt, const std::vector<std::string>& completions) const {
  const auto prompt_ids = model_.vocabulary().encode(prompt).tokens;
  std::vector<CompletionScore> out;
  out.reserve(completions.size());
  std::vector<int> history;
  for (const auto& c : completions) {
    const auto ids = model_.vocabulary().encode(c).tokens;
    if (ids.empty()) throw TokenizationError("completion '" + c + "' has no tokens");
    history = prompt_ids;
    std::vector<double> logprobs;
    logprobs.reserve(ids.size());
    for (int id : ids) {
      const auto ctx = model_.context_of(history);
      logprobs.push_back(model_.log_prob(ctx, id));
      history.push_back(id);
    }
    out.push_back(CompletionScore::from_logprobs(c, std::move(logprobs)));
  }
  return out;
}

}  // namespace gg
