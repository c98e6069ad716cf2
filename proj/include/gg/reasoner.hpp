#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gg/narrator.hpp"
#include "gg/scorer.hpp"
#include "gg/semantic_map.hpp"

namespace gg {

inline constexpr std::string_view kDefaultBindingSequence = "Next, the human will go to the ";

struct PromptSpec {
  Narration narration;
  std::string binding_sequence{kDefaultBindingSequence};

  std::string text() const { return narration.text + binding_sequence; }
};

struct RelevancyScores {
  std::map<std::string, double> completion_scores;  // label -> s_c
  std::map<int, double> item_scores;                // item id -> s_i
  std::map<int, double> partition_scores;           // partition id -> S_j
};

struct ReasonerOptions {
  /// Score completions by the geometric mean of their token probabilities
  /// instead of the product.
  bool length_normalized = false;
};

/// Sorted distinct item labels of the map.
std::vector<std::string> build_completion_set(const SemanticMap& map);

/// Sums item scores per assigned partition. Partitions without items score
/// 0. Throws ValidationError when an item has no score.
std::map<int, double> aggregate_partitions(const SemanticMap& map,
                                           const std::map<int, double>& item_scores);

/// Scores every label as a completion of the prompt, spreads each label score
/// evenly over the label's items and aggregates per partition.
RelevancyScores compute_relevancy(const SemanticMap& map, const PromptSpec& prompt,
                                  const ScoringBackend& backend,
                                  const ReasonerOptions& options = {});

/// Same, with the completion set precomputed.
RelevancyScores compute_relevancy(const SemanticMap& map, const std::vector<std::string>& completions,
                                  const PromptSpec& prompt, const ScoringBackend& backend,
                                  const ReasonerOptions& options = {});

}  // namespace gg
