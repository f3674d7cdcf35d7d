#include "triage/learner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "triage/csvio.hpp"
#include "triage/text.hpp"

namespace triage {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::optional<Label> normalize_label(const std::string& raw) {
  std::string s = lower(raw);
  if (s == "related" || s == "relevant" || s == "on-topic" || s == "on topic")
    return Label::related;
  if (s == "not related" || s == "not relevant" || s == "not_related" || s == "off-topic" ||
      s == "off topic")
    return Label::not_related;
  if (s == "can't decide" || s == "cant decide" || s == "can not decide")
    return std::nullopt;
  throw std::runtime_error("unknown training label: '" + raw + "'");
}

std::vector<LabeledExample> load_training(const std::string& path) {
  auto rows = read_csv_file(path);
  if (rows.empty()) throw std::runtime_error("training file empty: " + path);
  const auto& header = rows[0];
  long long text_col = -1, label_col = -1, conf_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::string h = lower(header[i]);
    if (h == "text") text_col = static_cast<long long>(i);
    else if (h == "label") label_col = static_cast<long long>(i);
    else if (h == "confidence") conf_col = static_cast<long long>(i);
  }
  if (text_col < 0 || label_col < 0)
    throw std::runtime_error("training file missing text/label columns: " + path);

  std::vector<LabeledExample> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() <= static_cast<std::size_t>(std::max(text_col, label_col))) continue;
    LabeledExample e;
    e.text = r[static_cast<std::size_t>(text_col)];
    auto label = normalize_label(r[static_cast<std::size_t>(label_col)]);
    if (!label) continue;  // "can't decide"
    e.label = *label;
    if (conf_col >= 0 && static_cast<std::size_t>(conf_col) < r.size() &&
        !r[static_cast<std::size_t>(conf_col)].empty()) {
      e.confidence = std::stod(r[static_cast<std::size_t>(conf_col)]);
      e.source = "crowdflower_style";
      if (e.confidence < 1.0) continue;  // keep only full-confidence rows
    } else {
      e.confidence = 1.0;  // no confidence column
      e.source = "crisislex_style";
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<LabeledExample> load_training(const std::vector<std::string>& paths) {
  std::vector<LabeledExample> out;
  for (const auto& p : paths) {
    auto part = load_training(p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

namespace {
inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
}  // namespace

double LogRegModel::predict_proba(const std::vector<double>& x) const {
  double z = bias;
  for (std::size_t i = 0; i < weights.size() && i < x.size(); ++i) z += weights[i] * x[i];
  return sigmoid(z);
}

double logreg_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                   const std::vector<double>& w, double b, double l2) {
  double loss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = b;
    for (std::size_t d = 0; d < w.size(); ++d) z += w[d] * x[i][d];
    // log(1+exp(-z)) computed stably
    double m = std::max(z, 0.0);
    double log1pe = m + std::log(std::exp(-m) + std::exp(z - m));
    loss += y[i] ? (log1pe - z) : log1pe;
  }
  loss /= static_cast<double>(x.size());
  double reg = 0;
  for (double wi : w) reg += wi * wi;
  return loss + 0.5 * l2 * reg;
}

void logreg_grad(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                 const std::vector<double>& w, double b, double l2,
                 std::vector<double>& grad_w, double& grad_b) {
  grad_w.assign(w.size(), 0.0);
  grad_b = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = b;
    for (std::size_t d = 0; d < w.size(); ++d) z += w[d] * x[i][d];
    double g = sigmoid(z) - static_cast<double>(y[i]);
    for (std::size_t d = 0; d < w.size(); ++d) grad_w[d] += g * x[i][d];
    grad_b += g;
  }
  const double n = static_cast<double>(x.size());
  for (std::size_t d = 0; d < w.size(); ++d) grad_w[d] = grad_w[d] / n + l2 * w[d];
  grad_b /= n;
}

LogRegModel train_logreg(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                         const LogRegConfig& config) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::runtime_error("train_logreg: need at least 2 examples with labels");
  bool has_pos = false, has_neg = false;
  for (int yi : y) (yi ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw std::runtime_error(
        "train_logreg: both classes must be present; provide positive and negative examples");

  LogRegModel model;
  model.l2 = config.l2;
  model.weights.assign(x[0].size(), 0.0);
  model.bias = 0.0;
  std::vector<double> gw;
  double gb = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    logreg_grad(x, y, model.weights, model.bias, model.l2, gw, gb);
    for (std::size_t d = 0; d < model.weights.size(); ++d)
      model.weights[d] -= config.learning_rate * gw[d];
    model.bias -= config.learning_rate * gb;
  }
  return model;
}

std::vector<double> RelevancePipeline::featurize(const TokenDoc& doc) const {
  if (mode == Featurization::tfidf_lsi) {
    return lsi_project(tfidf_transform(bow(doc, vocab), idf), lsi);
  }
  return doc_vector_avg(doc, embeddings);
}

double RelevancePipeline::predict_proba(const std::string& text) const {
  return logreg.predict_proba(featurize(tokenize(text)));
}

RelevancePipeline train_relevance(const std::set<std::string>& types,
                                  const std::vector<LabeledExample>& examples,
                                  const RelevanceConfig& config) {
  if (examples.empty()) throw std::runtime_error("train_relevance: no examples");

  // seeded shuffle so example order does not matter
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (examples[a].text != examples[b].text) return examples[a].text < examples[b].text;
    return examples[a].label < examples[b].label;
  });
  std::mt19937_64 rng(config.seed);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng() % i]);

  std::vector<TokenDoc> docs;
  std::vector<int> labels;
  docs.reserve(examples.size());
  for (std::size_t i : order) {
    docs.push_back(tokenize(examples[i].text));
    labels.push_back(examples[i].label == Label::related ? 1 : 0);
  }

  RelevancePipeline p;
  p.types = types;
  p.mode = config.mode;
  p.threshold = config.threshold;

  std::vector<std::vector<double>> features;
  if (config.mode == Featurization::tfidf_lsi) {
    p.vocab = Vocabulary::build(docs, config.vocab_min_count);
    if (p.vocab.size() == 0)
      throw std::runtime_error("train_relevance: empty vocabulary after min_count filter");
    p.idf = tfidf_fit(docs, p.vocab);
    std::vector<SparseVector> weighted;
    weighted.reserve(docs.size());
    for (const auto& d : docs) weighted.push_back(tfidf_transform(bow(d, p.vocab), p.idf));
    std::size_t k = std::min(config.lsi_k, std::min(p.vocab.size(), docs.size()));
    p.lsi = lsi_fit(weighted, k, config.seed);
    for (const auto& w : weighted) features.push_back(lsi_project(w, p.lsi));
  } else {
    EmbeddingConfig ec = config.embedding;
    ec.seed = config.seed;
    p.embeddings = train_word2vec(docs, ec, config.vocab_min_count);
    p.vocab = p.embeddings.vocab;
    for (const auto& d : docs) features.push_back(doc_vector_avg(d, p.embeddings));
  }

  LogRegConfig lc = config.logreg;
  lc.seed = config.seed;
  p.logreg = train_logreg(features, labels, lc);
  return p;
}

namespace {

json vocab_to_json(const Vocabulary& v) {
  json j;
  j["tokens"] = v.tokens();
  std::vector<std::size_t> df, cf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    df.push_back(v.doc_frequency(i));
    cf.push_back(v.corpus_frequency(i));
  }
  j["doc_freq"] = df;
  j["corpus_freq"] = cf;
  j["min_count"] = v.min_count();
  return j;
}

Vocabulary vocab_from_json(const json& j) {
  return Vocabulary::from_parts(j.at("tokens").get<std::vector<std::string>>(),
                                j.at("doc_freq").get<std::vector<std::size_t>>(),
                                j.at("corpus_freq").get<std::vector<std::size_t>>(),
                                j.at("min_count").get<std::size_t>());
}

json embmatrix_to_json(const EmbMatrix& m) {
  return json{{"rows", m.rows}, {"dim", m.dim}, {"data", m.data}};
}

EmbMatrix embmatrix_from_json(const json& j) {
  EmbMatrix m(j.at("rows").get<std::size_t>(), j.at("dim").get<std::size_t>());
  m.data = j.at("data").get<std::vector<double>>();
  return m;
}

constexpr int kBundleVersion = 1;

}  // namespace

void save_pipeline(const RelevancePipeline& p, const std::string& path) {
  json j;
  j["format_version"] = kBundleVersion;
  j["kind"] = "relevance_pipeline";
  j["types"] = p.types;
  j["mode"] = p.mode == Featurization::tfidf_lsi ? "tfidf_lsi" : "word2vec_avg";
  j["threshold"] = p.threshold;
  j["vocab"] = vocab_to_json(p.vocab);
  j["logreg"] = {{"weights", p.logreg.weights}, {"bias", p.logreg.bias}, {"l2", p.logreg.l2}};
  if (p.mode == Featurization::tfidf_lsi) {
    j["idf"] = {{"idf", p.idf.idf}, {"doc_count", p.idf.doc_count}};
    j["lsi"] = {{"vocab_dim", p.lsi.vocab_dim},
                {"k", p.lsi.k},
                {"projection", p.lsi.projection},
                {"singular_values", p.lsi.singular_values},
                {"converged", p.lsi.converged}};
  } else {
    j["embeddings"] = {{"in", embmatrix_to_json(p.embeddings.in)},
                       {"dim", p.embeddings.config.dim}};
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write pipeline bundle: " + path);
  out << j.dump();
  if (!out) throw std::runtime_error("write failure: " + path);
}

RelevancePipeline load_pipeline(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open pipeline bundle: " + path);
  json j = json::parse(in);
  if (j.at("format_version").get<int>() != kBundleVersion)
    throw std::runtime_error("pipeline bundle: unsupported format version");
  RelevancePipeline p;
  p.types = j.at("types").get<std::set<std::string>>();
  p.mode = j.at("mode").get<std::string>() == "tfidf_lsi" ? Featurization::tfidf_lsi
                                                          : Featurization::word2vec_avg;
  p.threshold = j.at("threshold").get<double>();
  p.vocab = vocab_from_json(j.at("vocab"));
  p.logreg.weights = j.at("logreg").at("weights").get<std::vector<double>>();
  p.logreg.bias = j.at("logreg").at("bias").get<double>();
  p.logreg.l2 = j.at("logreg").at("l2").get<double>();
  if (p.mode == Featurization::tfidf_lsi) {
    p.idf.idf = j.at("idf").at("idf").get<std::vector<double>>();
    p.idf.doc_count = j.at("idf").at("doc_count").get<std::size_t>();
    p.lsi.vocab_dim = j.at("lsi").at("vocab_dim").get<std::size_t>();
    p.lsi.k = j.at("lsi").at("k").get<std::size_t>();
    p.lsi.projection = j.at("lsi").at("projection").get<std::vector<std::vector<double>>>();
    p.lsi.singular_values = j.at("lsi").at("singular_values").get<std::vector<double>>();
    p.lsi.converged = j.at("lsi").at("converged").get<bool>();
  } else {
    p.embeddings.vocab = p.vocab;
    p.embeddings.in = embmatrix_from_json(j.at("embeddings").at("in"));
    p.embeddings.config.dim = j.at("embeddings").at("dim").get<std::size_t>();
  }
  return p;
}

std::set<std::string> classify_learning(const Corpus& corpus, const RelevancePipeline& pipeline,
                                        ExecMode exec) {
  const auto& tweets = corpus.tweets();
  auto relevant = map_indexed<char>(
      tweets.size(),
      [&](std::size_t i) {
        return pipeline.predict_proba(tweets[i].text) >= pipeline.threshold ? 1 : 0;
      },
      exec);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < tweets.size(); ++i)
    if (relevant[i]) ids.insert(tweets[i].tweet_id);
  return ids;
}

std::set<std::string> classify_learning(const Corpus& corpus,
                                        const RelevancePipeline& pipeline) {
  return classify_learning(corpus, pipeline, default_exec_mode());
}

}  // namespace triage
