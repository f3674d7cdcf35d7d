#include "triage/tweet.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "triage/text.hpp"

namespace triage {

using nlohmann::json;

Corpus::Corpus(std::vector<Tweet> tweets) : tweets_(std::move(tweets)) {
  for (std::size_t i = 0; i < tweets_.size(); ++i) {
    by_user_[tweets_[i].user_id].push_back(i);
    by_day_[floor_day(tweets_[i].timestamp)].push_back(i);
  }
}

Corpus load_corpus(const std::string& path, LoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::vector<Tweet> tweets;
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    rep.errors.push_back("line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    ++rep.lines;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      fail("malformed JSON");
      continue;
    }
    if (!j.contains("id") || !j.contains("user") || !j.contains("ts") || !j.contains("text")) {
      fail("missing required field (id/user/ts/text)");
      continue;
    }
    Tweet t;
    try {
      t.tweet_id = j.at("id").get<std::string>();
      t.user_id = j.at("user").get<std::string>();
      t.text = j.at("text").get<std::string>();
      auto ts = parse_iso8601(j.at("ts").get<std::string>());
      if (!ts) {
        fail("bad timestamp");
        continue;
      }
      t.timestamp = *ts;
      if (j.contains("lat") != j.contains("lon")) {
        fail("lat/lon must appear together");
        continue;
      }
      if (j.contains("lat")) {
        t.lat = j.at("lat").get<double>();
        t.lon = j.at("lon").get<double>();
        if (*t.lat < -90 || *t.lat > 90 || *t.lon < -180 || *t.lon > 180) {
          fail("coordinates out of range");
          continue;
        }
      }
      if (j.contains("rt")) t.is_retweet = j.at("rt").get<bool>();
      if (j.contains("fips")) t.county_fips = j.at("fips").get<std::string>();
    } catch (const json::exception& e) {
      fail(e.what());
      continue;
    }
    ++rep.parsed;
    tweets.push_back(std::move(t));
  }
  return Corpus(std::move(tweets));
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  for (const Tweet& t : corpus.tweets()) {
    json j;
    j["id"] = t.tweet_id;
    j["user"] = t.user_id;
    j["ts"] = format_iso8601(t.timestamp);
    if (t.lat) {
      j["lat"] = *t.lat;
      j["lon"] = *t.lon;
    }
    j["text"] = t.text;
    if (t.is_retweet) j["rt"] = true;
    if (t.county_fips) j["fips"] = *t.county_fips;
    out << j.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write failure: " + path);
}

std::set<std::string> spam_users(const Corpus& corpus, std::size_t threshold) {
  std::set<std::string> spam;
  std::unordered_map<std::string, std::unordered_map<UtcSeconds, std::size_t>> per_user_day;
  for (const Tweet& t : corpus.tweets()) {
    ++per_user_day[t.user_id][floor_day(t.timestamp)];
  }
  for (const auto& [user, days] : per_user_day) {
    for (const auto& [day, n] : days) {
      if (n > threshold) {  // strictly "more than"
        spam.insert(user);
        break;
      }
    }
  }
  return spam;
}

DespamResult remove_spam(const Corpus& corpus, std::size_t threshold) {
  const auto spam = spam_users(corpus, threshold);
  std::vector<Tweet> kept, removed;
  for (const Tweet& t : corpus.tweets()) {
    (spam.count(t.user_id) ? removed : kept).push_back(t);
  }
  DespamResult r;
  r.stats.spam_user_count = spam.size();
  r.stats.total_user_count = corpus.by_user().size();
  r.stats.spam_tweet_count = removed.size();
  r.stats.total_tweet_count = corpus.size();
  r.kept = Corpus(std::move(kept));
  r.removed = Corpus(std::move(removed));
  return r;
}

HashtagDict build_hashtag_dict(const Corpus& corpus) {
  HashtagDict dict;
  for (const Tweet& t : corpus.tweets()) {
    for (const std::string& tok : tokenize(t.text)) {
      if (tok.size() > 1 && tok[0] == '#') {
        ++dict[tok.substr(1)];
      }
    }
  }
  return dict;
}

}  // namespace triage
