#include "triage/sentiment.hpp"

#include <fstream>
#include <functional>
#include <stdexcept>

#include <json.hpp>

#include "triage/csvio.hpp"
#include "triage/text.hpp"

namespace triage {

std::vector<SentimentExample> load_sentiment_csv(const std::string& path) {
  auto rows = read_csv_file(path);
  if (rows.empty()) throw std::runtime_error("sentiment file empty: " + path);
  if (rows[0].size() < 2 || rows[0][0] != "polarity" || rows[0][1] != "text")
    throw std::runtime_error("sentiment file: expected header polarity,text in " + path);
  std::vector<SentimentExample> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() < 2) continue;
    const std::string& p = rows[i][0];
    SentimentExample e;
    if (p == "0" || p == "neg") e.polarity = Polarity::negative;
    else if (p == "4" || p == "pos") e.polarity = Polarity::positive;
    else throw std::runtime_error("sentiment file: unknown polarity '" + p + "' at row " +
                                  std::to_string(i + 1));
    e.text = rows[i][1];
    out.push_back(std::move(e));
  }
  return out;
}

SentimentTrainResult train_sentiment(const std::vector<SentimentExample>& train,
                                     const std::vector<SentimentExample>& test,
                                     const std::vector<std::string>& prediction_texts,
                                     const EmbeddingConfig& config,
                                     const LogRegConfig& logreg_config) {
  bool has_pos = false, has_neg = false;
  for (const auto& e : train) (e.polarity == Polarity::positive ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw std::runtime_error("train_sentiment: training set needs both polarities");

  std::vector<TokenDoc> docs;
  docs.reserve(train.size() + test.size() + prediction_texts.size());
  for (const auto& e : train) docs.push_back(tokenize(e.text));
  for (const auto& e : test) docs.push_back(tokenize(e.text));
  for (const auto& t : prediction_texts) docs.push_back(tokenize(t));

  SentimentTrainResult result;
  // sentiment vocabulary keeps every word (min_count 1)
  result.model.doc2vec = train_doc2vec(docs, config, 1);

  const EmbMatrix& dv = result.model.doc2vec.docs;
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  for (std::size_t i = 0; i < train.size(); ++i) {
    const double* r = dv.row(i);
    x.emplace_back(r, r + dv.dim);
    y.push_back(train[i].polarity == Polarity::positive ? 1 : 0);
  }
  result.model.logreg = train_logreg(x, y, logreg_config);

  if (!test.empty()) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      const double* r = dv.row(train.size() + i);
      std::vector<double> v(r, r + dv.dim);
      bool pos = result.model.logreg.predict_proba(v) >= result.model.threshold;
      if (pos == (test[i].polarity == Polarity::positive)) ++correct;
    }
    result.test_accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
  }
  return result;
}

std::vector<Polarity> predict_sentiment(const std::vector<Tweet>& tweets,
                                        const SentimentModel& model, ExecMode exec) {
  return map_indexed<Polarity>(
      tweets.size(),
      [&](std::size_t i) {
        std::uint64_t seed = std::hash<std::string>{}(tweets[i].tweet_id);
        auto v = infer_vector(tokenize(tweets[i].text), model.doc2vec, seed);
        return model.logreg.predict_proba(v) >= model.threshold ? Polarity::positive
                                                                : Polarity::negative;
      },
      exec);
}

std::vector<Polarity> predict_sentiment(const std::vector<Tweet>& tweets,
                                        const SentimentModel& model) {
  return predict_sentiment(tweets, model, default_exec_mode());
}

void save_sentiment_model(const SentimentModel& model, const std::string& path) {
  using nlohmann::json;
  auto mat = [](const EmbMatrix& m) {
    return json{{"rows", m.rows}, {"dim", m.dim}, {"data", m.data}};
  };
  const Vocabulary& v = model.doc2vec.vocab;
  std::vector<std::size_t> df, cf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    df.push_back(v.doc_frequency(i));
    cf.push_back(v.corpus_frequency(i));
  }
  json j;
  j["format_version"] = 1;
  j["kind"] = "sentiment_model";
  j["vocab"] = {{"tokens", v.tokens()}, {"doc_freq", df}, {"corpus_freq", cf},
                {"min_count", v.min_count()}};
  j["in"] = mat(model.doc2vec.in);
  j["out"] = mat(model.doc2vec.out);
  j["docs"] = mat(model.doc2vec.docs);
  j["config"] = {{"dim", model.doc2vec.config.dim},
                 {"window", model.doc2vec.config.window},
                 {"negatives", model.doc2vec.config.negatives},
                 {"subsample", model.doc2vec.config.subsample},
                 {"epochs", model.doc2vec.config.epochs},
                 {"seed", model.doc2vec.config.seed}};
  j["infer_steps"] = model.doc2vec.infer_steps;
  j["infer_lr"] = model.doc2vec.infer_lr;
  j["logreg"] = {{"weights", model.logreg.weights}, {"bias", model.logreg.bias},
                 {"l2", model.logreg.l2}};
  j["threshold"] = model.threshold;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write sentiment model: " + path);
  out << j.dump();
  if (!out) throw std::runtime_error("write failure: " + path);
}

SentimentModel load_sentiment_model(const std::string& path) {
  using nlohmann::json;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open sentiment model: " + path);
  json j = json::parse(in);
  if (j.at("format_version").get<int>() != 1)
    throw std::runtime_error("sentiment model: unsupported format version");
  auto mat = [](const json& m) {
    EmbMatrix out(m.at("rows").get<std::size_t>(), m.at("dim").get<std::size_t>());
    out.data = m.at("data").get<std::vector<double>>();
    return out;
  };
  SentimentModel model;
  model.doc2vec.vocab = Vocabulary::from_parts(
      j.at("vocab").at("tokens").get<std::vector<std::string>>(),
      j.at("vocab").at("doc_freq").get<std::vector<std::size_t>>(),
      j.at("vocab").at("corpus_freq").get<std::vector<std::size_t>>(),
      j.at("vocab").at("min_count").get<std::size_t>());
  model.doc2vec.in = mat(j.at("in"));
  model.doc2vec.out = mat(j.at("out"));
  model.doc2vec.docs = mat(j.at("docs"));
  model.doc2vec.config.dim = j.at("config").at("dim").get<std::size_t>();
  model.doc2vec.config.window = j.at("config").at("window").get<std::size_t>();
  model.doc2vec.config.negatives = j.at("config").at("negatives").get<std::size_t>();
  model.doc2vec.config.subsample = j.at("config").at("subsample").get<double>();
  model.doc2vec.config.epochs = j.at("config").at("epochs").get<std::size_t>();
  model.doc2vec.config.seed = j.at("config").at("seed").get<std::uint64_t>();
  model.doc2vec.infer_steps = j.at("infer_steps").get<std::size_t>();
  model.doc2vec.infer_lr = j.at("infer_lr").get<double>();
  model.logreg.weights = j.at("logreg").at("weights").get<std::vector<double>>();
  model.logreg.bias = j.at("logreg").at("bias").get<double>();
  model.logreg.l2 = j.at("logreg").at("l2").get<double>();
  model.threshold = j.at("threshold").get<double>();
  return model;
}

std::vector<TimeSeriesBin> bin_counts(const std::vector<Tweet>& tweets,
                                      const std::vector<Polarity>& labels,
                                      BinGranularity granularity, UtcSeconds window_start,
                                      UtcSeconds window_end) {
  if (window_start >= window_end)
    throw std::runtime_error("bin_counts: window start must precede end");
  const std::int64_t step =
      granularity == BinGranularity::hour ? kSecondsPerHour : kSecondsPerDay;
  const UtcSeconds first =
      granularity == BinGranularity::hour ? floor_hour(window_start) : floor_day(window_start);

  std::vector<TimeSeriesBin> bins;
  for (UtcSeconds t = first; t < window_end; t += step)
    bins.push_back({t, granularity, 0, 0});

  for (std::size_t i = 0; i < tweets.size(); ++i) {
    UtcSeconds ts = tweets[i].timestamp;
    if (ts < window_start || ts >= window_end) continue;
    std::size_t idx = static_cast<std::size_t>((ts - first) / step);
    if (labels[i] == Polarity::positive) ++bins[idx].positive;
    else ++bins[idx].negative;
  }
  return bins;
}

void write_bins_csv(const std::vector<TimeSeriesBin>& bins, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write bins CSV: " + path);
  write_csv_row(out, {"bin_start", "granularity", "positive", "negative"});
  for (const auto& b : bins) {
    write_csv_row(out, {format_iso8601(b.bin_start),
                        b.granularity == BinGranularity::hour ? "hour" : "day",
                        std::to_string(b.positive), std::to_string(b.negative)});
  }
  if (!out) throw std::runtime_error("write failure: " + path);
}

}  // namespace triage
