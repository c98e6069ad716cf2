#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gg/scorer.hpp"
#include "gg/tokenizer.hpp"

namespace gg {

/// Word n-gram model with add-one (Laplace) smoothing:
///
///   p(w | h) = (c(h, w) + 1) / (c(h) + V)
///
/// where h is the previous order-1 tokens, c(h) = sum_w c(h, w) and V is the
/// vocabulary size including <unk>. Every corpus line is an independent
/// sequence padded on the left with <s>; <s> is never predicted.
class NgramModel {
 public:
  NgramModel(std::string_view corpus, std::size_t order);

  std::size_t order() const { return order_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  /// Number of predictable tokens (V).
  std::size_t vocabulary_size() const { return vocab_.size(); }

  /// Context of the token following `history` (ids, without padding).
  std::vector<int> context_of(std::span<const int> history) const;

  double log_prob(std::span<const int> context, int next) const;
  double count(std::span<const int> context, int next) const;
  double context_total(std::span<const int> context) const;

  static constexpr int kStart = -1;

 private:
  struct ContextCounts {
    double total = 0.0;
    std::unordered_map<int, double> next;
  };
  static std::string key_of(std::span<const int> context);

  std::size_t order_;
  Vocabulary vocab_;
  std::unordered_map<std::string, ContextCounts> counts_;
};

class NgramBackend final : public ScoringBackend {
 public:
  NgramBackend(std::string_view corpus, std::size_t order, std::string name = "ngram");
  static NgramBackend from_file(const std::filesystem::path& corpus, std::size_t order);

  const NgramModel& model() const { return model_; }

  std::vector<CompletionScore> score(std::string_view prompt,
                                     const std::vector<std::string>& completions) const override;
  std::string name() const override { return name_; }

 private:
  NgramModel model_;
  std::string name_;
};

}  // namespace gg
