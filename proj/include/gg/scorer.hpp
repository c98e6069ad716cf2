#pragma once

#include <chrono>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gg {

class SemanticMap;
struct ActivityProgram;
class TemplateRegistry;

/// Per-token natural-log probabilities of one completion given the prompt.
struct CompletionScore {
  std::string completion;
  std::vector<double> token_logprobs;
  double total_logprob = 0.0;

  static CompletionScore from_logprobs(std::string completion, std::vector<double> logprobs);

  /// Product of the token probabilities.
  double probability() const { return std::exp(total_logprob); }
  /// Geometric mean of the token probabilities.
  double per_token_probability() const;
};

/// A token-probability model. Implementations must be safe to call from
/// several threads at once.
class ScoringBackend {
 public:
  virtual ~ScoringBackend() = default;

  /// One result per completion, in input order. token_logprobs[j] is
  /// log p(c_j | prompt tokens + c_1..c_{j-1}).
  virtual std::vector<CompletionScore> score(std::string_view prompt,
                                             const std::vector<std::string>& completions) const = 0;

  virtual std::string name() const = 0;
};

/// Scores every completion against the prompt and checks the backend's
/// answer: result order, non-positive log-probabilities, and totals equal to
/// the sum of token terms.
std::vector<CompletionScore> score_completions(std::string_view prompt,
                                               const std::vector<std::string>& completions,
                                               const ScoringBackend& backend);

/// Memoizes results per (prompt, completion list). Replanning revisits the
/// same narrations many times across restarts.
class CachingBackend final : public ScoringBackend {
 public:
  explicit CachingBackend(std::shared_ptr<const ScoringBackend> inner) : inner_(std::move(inner)) {}

  std::vector<CompletionScore> score(std::string_view prompt,
                                     const std::vector<std::string>& completions) const override;
  std::string name() const override { return inner_->name(); }

 private:
  std::shared_ptr<const ScoringBackend> inner_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, std::vector<CompletionScore>> cache_;
};

/// What a generated stub fixture needs to know about the scenario. Only the
/// `oracle-next-room` stub uses it.
struct StubContext {
  const SemanticMap* map = nullptr;
  const ActivityProgram* program = nullptr;
  const std::vector<std::size_t>* action_rooms = nullptr;  // room per program action
  const TemplateRegistry* templates = nullptr;
  std::string template_id = "default";
  std::string binding_sequence;
  std::size_t window = 10;
};

struct BackendOptions {
  std::chrono::milliseconds timeout{30000};
  const StubContext* stub_context = nullptr;
};

/// `stub:<fixture>`, `ngram:<corpus-path>,<order>` or `remote:<url>`. An
/// empty remote url falls back to the GG_SCORER_URL environment variable.
/// Throws ConfigError for unknown schemes or missing files and BackendError
/// when a remote handshake fails.
std::shared_ptr<const ScoringBackend> make_backend(std::string_view spec,
                                                   const BackendOptions& options = {});

}  // namespace gg
