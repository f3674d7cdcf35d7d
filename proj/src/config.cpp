#include "triage/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace triage {

using nlohmann::json;

namespace {

json to_json(const PipelineConfig& c) {
  json j;
  j["paths"] = {{"corpus", c.corpus_path},
                {"manifest", c.manifest_path},
                {"geometry", c.geometry_path},
                {"ledger", c.ledger_path},
                {"training", c.training_paths},
                {"sentiment_train", c.sentiment_train_path},
                {"sentiment_test", c.sentiment_test_path},
                {"emoji_map", c.emoji_map_path},
                {"out_dir", c.out_dir}};
  j["spam_threshold"] = c.spam_threshold;
  j["keyword_match"] = c.keyword_match == KeywordMatchMode::substring ? "substring" : "token";
  j["featurization"] =
      c.relevance.mode == Featurization::tfidf_lsi ? "tfidf_lsi" : "word2vec_avg";
  j["lsi_k"] = c.relevance.lsi_k;
  j["vocab_min_count"] = c.relevance.vocab_min_count;
  j["threshold"] = c.relevance.threshold;
  j["logreg"] = {{"l2", c.relevance.logreg.l2},
                 {"learning_rate", c.relevance.logreg.learning_rate},
                 {"epochs", c.relevance.logreg.epochs}};
  auto emb = [](const EmbeddingConfig& e) {
    return json{{"dim", e.dim},       {"window", e.window},   {"negatives", e.negatives},
                {"subsample", e.subsample}, {"epochs", e.epochs}, {"lr", e.lr}};
  };
  j["word2vec"] = emb(c.relevance.embedding);
  j["doc2vec"] = emb(c.doc2vec);
  j["sentiment_logreg"] = {{"l2", c.sentiment_logreg.l2},
                           {"learning_rate", c.sentiment_logreg.learning_rate},
                           {"epochs", c.sentiment_logreg.epochs}};
  j["infer_steps"] = c.infer_steps;
  j["infer_lr"] = c.infer_lr;
  j["seed"] = c.seed;
  return j;
}

void read_emb(const json& j, EmbeddingConfig& e) {
  e.dim = j.value("dim", e.dim);
  e.window = j.value("window", e.window);
  e.negatives = j.value("negatives", e.negatives);
  e.subsample = j.value("subsample", e.subsample);
  e.epochs = j.value("epochs", e.epochs);
  e.lr = j.value("lr", e.lr);
}

void read_logreg(const json& j, LogRegConfig& l) {
  l.l2 = j.value("l2", l.l2);
  l.learning_rate = j.value("learning_rate", l.learning_rate);
  l.epochs = j.value("epochs", l.epochs);
}

}  // namespace

std::string PipelineConfig::hash() const {
  // FNV-1a over the canonical JSON dump
  std::string s = to_json(*this).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PipelineConfig default_config() {
  PipelineConfig c;
  c.doc2vec.window = 10;  // paragraph-vector default
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j = json::parse(in);
  PipelineConfig c = default_config();
  if (j.contains("paths")) {
    const auto& p = j["paths"];
    c.corpus_path = p.value("corpus", c.corpus_path);
    c.manifest_path = p.value("manifest", c.manifest_path);
    c.geometry_path = p.value("geometry", c.geometry_path);
    c.ledger_path = p.value("ledger", c.ledger_path);
    if (p.contains("training")) c.training_paths = p["training"].get<std::vector<std::string>>();
    c.sentiment_train_path = p.value("sentiment_train", c.sentiment_train_path);
    c.sentiment_test_path = p.value("sentiment_test", c.sentiment_test_path);
    c.emoji_map_path = p.value("emoji_map", c.emoji_map_path);
    c.out_dir = p.value("out_dir", c.out_dir);
  }
  c.spam_threshold = j.value("spam_threshold", c.spam_threshold);
  if (j.contains("keyword_match")) {
    std::string m = j["keyword_match"].get<std::string>();
    if (m == "substring") c.keyword_match = KeywordMatchMode::substring;
    else if (m == "token") c.keyword_match = KeywordMatchMode::token;
    else throw std::runtime_error("config: keyword_match must be substring|token");
  }
  if (j.contains("featurization")) {
    std::string m = j["featurization"].get<std::string>();
    if (m == "tfidf_lsi") c.relevance.mode = Featurization::tfidf_lsi;
    else if (m == "word2vec_avg") c.relevance.mode = Featurization::word2vec_avg;
    else throw std::runtime_error("config: featurization must be tfidf_lsi|word2vec_avg");
  }
  c.relevance.lsi_k = j.value("lsi_k", c.relevance.lsi_k);
  c.relevance.vocab_min_count = j.value("vocab_min_count", c.relevance.vocab_min_count);
  c.relevance.threshold = j.value("threshold", c.relevance.threshold);
  if (j.contains("logreg")) read_logreg(j["logreg"], c.relevance.logreg);
  if (j.contains("word2vec")) read_emb(j["word2vec"], c.relevance.embedding);
  if (j.contains("doc2vec")) read_emb(j["doc2vec"], c.doc2vec);
  if (j.contains("sentiment_logreg")) read_logreg(j["sentiment_logreg"], c.sentiment_logreg);
  c.infer_steps = j.value("infer_steps", c.infer_steps);
  c.infer_lr = j.value("infer_lr", c.infer_lr);
  c.seed = j.value("seed", c.seed);
  c.relevance.seed = c.seed;
  c.relevance.logreg.seed = c.seed;
  c.doc2vec.seed = c.seed;
  c.sentiment_logreg.seed = c.seed;
  return c;
}

}  // namespace triage
