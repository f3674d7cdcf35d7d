#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "triage/timeutil.hpp"

namespace triage {

struct Tweet {
  std::string tweet_id;
  std::string user_id;
  UtcSeconds timestamp = 0;
  std::optional<double> lat;
  std::optional<double> lon;
  std::string text;
  bool is_retweet = false;
  std::optional<std::string> county_fips;
};

// Immutable after construction; indexes cover the tweet list exactly.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Tweet> tweets);

  const std::vector<Tweet>& tweets() const { return tweets_; }
  std::size_t size() const { return tweets_.size(); }
  bool empty() const { return tweets_.empty(); }

  // user_id -> indexes into tweets()
  const std::unordered_map<std::string, std::vector<std::size_t>>& by_user() const {
    return by_user_;
  }
  // UTC day start (epoch seconds) -> indexes into tweets()
  const std::map<UtcSeconds, std::vector<std::size_t>>& by_day() const { return by_day_; }

 private:
  std::vector<Tweet> tweets_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_user_;
  std::map<UtcSeconds, std::vector<std::size_t>> by_day_;
};

struct LoadReport {
  std::size_t lines = 0;
  std::size_t parsed = 0;
  std::vector<std::string> errors;  // "line N: reason"
};

// JSON Lines: id, user, ts (ISO-8601 UTC), lat/lon (optional), text,
// rt (optional bool), fips (optional string).
Corpus load_corpus(const std::string& path, LoadReport* report = nullptr);
void save_corpus(const Corpus& corpus, const std::string& path);

struct SpamStats {
  std::size_t spam_user_count = 0;
  std::size_t total_user_count = 0;
  std::size_t spam_tweet_count = 0;
  std::size_t total_tweet_count = 0;

  double spam_ratio() const {
    return total_tweet_count ? 100.0 * static_cast<double>(spam_tweet_count) /
                                   static_cast<double>(total_tweet_count)
                             : 0.0;
  }
  double spam_user_ratio() const {
    return total_user_count ? 100.0 * static_cast<double>(spam_user_count) /
                                  static_cast<double>(total_user_count)
                            : 0.0;
  }
};

// Spam iff the user posts strictly more than `threshold` tweets on any
// single UTC calendar day.
std::set<std::string> spam_users(const Corpus& corpus, std::size_t threshold = 15);

struct DespamResult {
  Corpus kept;
  Corpus removed;
  SpamStats stats;
};
DespamResult remove_spam(const Corpus& corpus, std::size_t threshold = 15);

// lowercase hashtag (without '#') -> occurrence count
using HashtagDict = std::map<std::string, std::size_t>;

HashtagDict build_hashtag_dict(const Corpus& corpus);

}  // namespace triage
