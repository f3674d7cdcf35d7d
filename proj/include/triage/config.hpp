#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "triage/embeddings.hpp"
#include "triage/learner.hpp"
#include "triage/matchfilter.hpp"

namespace triage {

struct PipelineConfig {
  // paths
  std::string corpus_path;
  std::string manifest_path;
  std::string geometry_path;
  std::string ledger_path;
  std::vector<std::string> training_paths;
  std::string sentiment_train_path;
  std::string sentiment_test_path;
  std::string emoji_map_path;
  std::string out_dir = "out";

  std::size_t spam_threshold = 15;
  KeywordMatchMode keyword_match = KeywordMatchMode::substring;

  RelevanceConfig relevance;
  EmbeddingConfig doc2vec;  // sentiment features
  LogRegConfig sentiment_logreg;
  std::size_t infer_steps = 20;
  double infer_lr = 0.025;

  std::uint64_t seed = 42;

  // stable content hash of the effective configuration
  std::string hash() const;
};

PipelineConfig load_config(const std::string& path);
PipelineConfig default_config();

}  // namespace triage
