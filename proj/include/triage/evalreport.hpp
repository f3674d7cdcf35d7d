#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "triage/learner.hpp"

namespace triage {

using IdSet = std::set<std::string>;

IdSet agreement(const IdSet& a, const IdSet& b);

// The paper's "recall" under the agreement-set convention:
// 100*|agreed|/|retrieved|; n/a for an empty retrieved set.
std::optional<double> paper_recall(std::size_t n_retrieved, std::size_t n_agreed);

std::optional<double> relevance_ratio(std::size_t n_relevant, std::size_t n_total_despammed);

struct PrecisionRecall {
  std::optional<double> precision;
  std::optional<double> recall;
};
PrecisionRecall precision_recall(const IdSet& predicted, const IdSet& truth);

// Seeded shuffle, split at floor(ratio*n).
std::pair<std::vector<LabeledExample>, std::vector<LabeledExample>> split_labeled(
    std::vector<LabeledExample> examples, double ratio, std::uint64_t seed);

struct ComparisonRow {
  std::string disaster_id;
  std::string region;  // affected / unaffected
  std::size_t n_matching = 0;
  std::size_t n_learning = 0;
  std::size_t n_agreement = 0;
  std::optional<double> recall_matching;
  std::optional<double> recall_learning;
  std::optional<double> relevance_matching;
  std::optional<double> relevance_learning;
  double spam_ratio = 0;
};

// Writes the results table (plus an unweighted averages row) to `path`.
// The recall columns use the agreement-set convention, flagged in the
// header comment row.
void emit_results(const std::vector<ComparisonRow>& rows, const std::string& path);

std::vector<ComparisonRow> parse_results(const std::string& path);

}  // namespace triage
