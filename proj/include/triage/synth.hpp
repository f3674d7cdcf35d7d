#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "triage/learner.hpp"
#include "triage/regions.hpp"
#include "triage/sentiment.hpp"
#include "triage/tweet.hpp"

namespace triage {

// Deterministic synthetic disaster scenario: one affected county and two
// vicinity counties, planted relevant/irrelevant tweets (30% of relevant
// carry only user-coined hashtags), a few high-volume spam users, and
// matching labeled training data.
struct SynthBundle {
  Corpus corpus;
  DisasterManifest manifest;
  CountyGeometry geometry;
  std::vector<LabeledExample> relevance_examples;
  std::set<std::string> planted_relevant_ids;
  std::set<std::string> planted_spam_users;
};

SynthBundle make_synth_bundle(std::uint64_t seed, std::size_t n_tweets = 5000);

// Balanced positive/negative texts with lexical sentiment markers.
std::vector<SentimentExample> make_sentiment_corpus(std::uint64_t seed, std::size_t n);

// Same corpus plus `n` extra tweets from one user on a single UTC day.
Corpus inject_spammer(const Corpus& corpus, const std::string& user_id, UtcSeconds day_start,
                      std::size_t n);

void save_geometry(const CountyGeometry& geom, const std::string& path);
void save_manifest(const DisasterManifest& manifest, const std::string& path);
void save_training_csv(const std::vector<LabeledExample>& examples, const std::string& path);
void save_sentiment_csv(const std::vector<SentimentExample>& examples, const std::string& path);

}  // namespace triage
