#include "gg/reasoner.hpp"

#include <cmath>
#include <set>

#include "gg/errors.hpp"

namespace gg {

namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

std::vector<std::string> build_completion_set(const SemanticMap& map) {
  std::set<std::string> labels;
  for (const auto& it : map.items()) labels.insert(it.label);
  return {labels.begin(), labels.end()};
}

std::map<int, double> aggregate_partitions(const SemanticMap& map,
                                           const std::map<int, double>& item_scores) {
  std::map<int, CompensatedSum> sums;
  for (const auto& p : map.partitions()) sums[p.id];
  const auto& assigned = map.item_partitions();
  for (std::size_t i = 0; i < map.items().size(); ++i) {
    const int id = map.items()[i].id;
    auto found = item_scores.find(id);
    if (found == item_scores.end())
      throw ValidationError("no relevancy score for item " + std::to_string(id));
    sums[assigned[i]].add(found->second);
  }
  std::map<int, double> out;
  for (const auto& [id, s] : sums) out[id] = s.value();
  return out;
}

RelevancyScores compute_relevancy(const SemanticMap& map, const PromptSpec& prompt,
                                  const ScoringBackend& backend, const ReasonerOptions& options) {
  return compute_relevancy(map, build_completion_set(map), prompt, backend, options);
}

RelevancyScores compute_relevancy(const SemanticMap& map, const std::vector<std::string>& completions,
                                  const PromptSpec& prompt, const ScoringBackend& backend,
                                  const ReasonerOptions& options) {
  if (completions.empty()) throw ValidationError("completion set is empty");
  RelevancyScores out;
  for (const auto& s : score_completions(prompt.text(), completions, backend))
    out.completion_scores[s.completion] =
        options.length_normalized ? s.per_token_probability() : s.probability();

  const auto counts = label_multiplicities(map);
  for (const auto& it : map.items()) {
    auto found = out.completion_scores.find(it.label);
    if (found == out.completion_scores.end())
      throw ValidationError("label '" + it.label + "' missing from the completion set");
    out.item_scores[it.id] = found->second / static_cast<double>(counts.at(it.label));
  }
  out.partition_scores = aggregate_partitions(map, out.item_scores);
  return out;
}

}  // namespace gg
