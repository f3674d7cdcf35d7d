#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "triage/embeddings.hpp"
#include "triage/features.hpp"
#include "triage/parallel.hpp"
#include "triage/tweet.hpp"

namespace triage {

enum class Label { related, not_related };

struct LabeledExample {
  std::string text;
  Label label = Label::not_related;
  double confidence = 1.0;
  std::string source;  // crisislex_style, crowdflower_style, other
};

// CSV `text,label,confidence` (confidence column optional). "can't decide"
// rows and rows with confidence < 1 are dropped.
std::vector<LabeledExample> load_training(const std::string& path);
std::vector<LabeledExample> load_training(const std::vector<std::string>& paths);

// Normalized label, nullopt for "can't decide"; throws on unknown labels.
std::optional<Label> normalize_label(const std::string& raw);

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  double l2 = 0.0;

  double predict_proba(const std::vector<double>& x) const;
};

struct LogRegConfig {
  double l2 = 1e-4;
  double learning_rate = 0.1;
  std::size_t epochs = 200;
  std::uint64_t seed = 0;
};

// Mean cross-entropy + (l2/2)||w||^2 (bias unregularized), full-batch
// gradient descent.
LogRegModel train_logreg(const std::vector<std::vector<double>>& x,
                         const std::vector<int>& y, const LogRegConfig& config);

// Loss/gradient exposed for the finite-difference check.
double logreg_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                   const std::vector<double>& w, double b, double l2);
void logreg_grad(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                 const std::vector<double>& w, double b, double l2,
                 std::vector<double>& grad_w, double& grad_b);

enum class Featurization { tfidf_lsi, word2vec_avg };

struct RelevanceConfig {
  Featurization mode = Featurization::tfidf_lsi;
  std::size_t lsi_k = 100;           // clamped to the rank bound
  std::size_t vocab_min_count = 2;
  EmbeddingConfig embedding;         // word2vec_avg mode
  LogRegConfig logreg;
  double threshold = 0.5;
  std::uint64_t seed = 42;
};

struct RelevancePipeline {
  std::set<std::string> types;
  Featurization mode = Featurization::tfidf_lsi;
  Vocabulary vocab;
  IdfWeights idf;
  LsiModel lsi;
  WordEmbeddings embeddings;  // word2vec_avg mode only
  LogRegModel logreg;
  double threshold = 0.5;

  std::vector<double> featurize(const TokenDoc& doc) const;
  double predict_proba(const std::string& text) const;
};

RelevancePipeline train_relevance(const std::set<std::string>& types,
                                  const std::vector<LabeledExample>& examples,
                                  const RelevanceConfig& config);

void save_pipeline(const RelevancePipeline& pipeline, const std::string& path);
RelevancePipeline load_pipeline(const std::string& path);

std::set<std::string> classify_learning(const Corpus& corpus, const RelevancePipeline& pipeline,
                                        ExecMode exec);
std::set<std::string> classify_learning(const Corpus& corpus, const RelevancePipeline& pipeline);

}  // namespace triage
