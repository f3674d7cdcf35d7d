#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triage/embeddings.hpp"
#include "triage/learner.hpp"
#include "triage/parallel.hpp"
#include "triage/timeutil.hpp"
#include "triage/tweet.hpp"

namespace triage {

enum class Polarity { negative, positive };

struct SentimentExample {
  std::string text;
  Polarity polarity = Polarity::negative;
};

// CSV `polarity,text`; polarity 0/neg = negative, 4/pos = positive
// (Sentiment140 convention).
std::vector<SentimentExample> load_sentiment_csv(const std::string& path);

struct SentimentModel {
  DocEmbeddings doc2vec;
  LogRegModel logreg;
  double threshold = 0.5;
};

struct SentimentTrainResult {
  SentimentModel model;
  std::optional<double> test_accuracy;  // nullopt when the test set is empty
};

// Transductive: doc2vec is trained over train + test + prediction texts,
// then logistic regression on the training vectors.
SentimentTrainResult train_sentiment(const std::vector<SentimentExample>& train,
                                     const std::vector<SentimentExample>& test,
                                     const std::vector<std::string>& prediction_texts,
                                     const EmbeddingConfig& config,
                                     const LogRegConfig& logreg_config);

// Inference seed derives from the tweet id, so prediction order and
// parallel scheduling cannot change results.
std::vector<Polarity> predict_sentiment(const std::vector<Tweet>& tweets,
                                        const SentimentModel& model, ExecMode exec);
std::vector<Polarity> predict_sentiment(const std::vector<Tweet>& tweets,
                                        const SentimentModel& model);

void save_sentiment_model(const SentimentModel& model, const std::string& path);
SentimentModel load_sentiment_model(const std::string& path);

enum class BinGranularity { hour, day };

struct TimeSeriesBin {
  UtcSeconds bin_start = 0;
  BinGranularity granularity = BinGranularity::hour;
  std::size_t positive = 0;
  std::size_t negative = 0;
};

// One bin per step over [start, end), zero bins included.
std::vector<TimeSeriesBin> bin_counts(const std::vector<Tweet>& tweets,
                                      const std::vector<Polarity>& labels,
                                      BinGranularity granularity, UtcSeconds window_start,
                                      UtcSeconds window_end);

// CSV `bin_start,granularity,positive,negative`.
void write_bins_csv(const std::vector<TimeSeriesBin>& bins, const std::string& path);

}  // namespace triage
