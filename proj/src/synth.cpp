#include "triage/synth.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "triage/csvio.hpp"

namespace triage {

using nlohmann::json;

namespace {

// Pools chosen so that no irrelevant/filler word contains a core keyword
// as a substring.
const std::vector<std::string> kCoreSentences = {
    "huge quake just hit downtown everything is a mess",
    "another aftershock woke the whole street tonight",
    "that tremor rattled the windows again",
    "felt the foreshock this morning before the big one",
    "strongest quake i have ever felt here",
    "aftershock after aftershock no sleep tonight",
};

const std::vector<std::string> kCoinedHashtags = {
    "3amquake", "quakeinsf", "napaquakenow", "quakewatch2014", "bigquakefeels",
};

const std::vector<std::string> kCoinedSentences = {
    "the whole house was shaking cant sleep",
    "streets cracked near the epicenter",
    "power lines down everywhere stay alert",
    "woke up to the bed moving across the room",
    "chimney collapsed into the yard",
};

const std::vector<std::string> kThemeWords = {
    "shaking", "epicenter", "magnitude", "seismic",  "collapsed",
    "rubble",  "evacuated", "cracks",    "sirens",   "helicopters",
};

const std::vector<std::string> kAmbiguousWords = {
    "emergency", "damage", "power", "building", "outage", "insurance",
};

const std::vector<std::string> kEverydaySentences = {
    "coffee with friends this morning was lovely",
    "traffic on the bridge is brutal today",
    "new album dropping tonight so excited",
    "lunch special at the taco place downtown",
    "game night at our place bring snacks",
    "morning run along the waterfront",
    "movie marathon all weekend long",
    "farmers market haul looking great",
};

const std::vector<std::string> kSpamSentences = {
    "win free tickets click the link now",
    "huge discount today only follow and share",
    "make money from home ask me how",
};

const std::vector<std::string> kNegMarkers = {"scared", "terrified", "awful", "terrible",
                                              "horrible"};
const std::vector<std::string> kPosMarkers = {"grateful", "relieved", "thankful", "glad",
                                              "hopeful"};

template <typename T>
const T& pick(const std::vector<T>& pool, std::mt19937_64& rng) {
  return pool[rng() % pool.size()];
}

}  // namespace

SynthBundle make_synth_bundle(std::uint64_t seed, std::size_t n_tweets) {
  std::mt19937_64 rng(seed);
  SynthBundle bundle;

  bundle.manifest.disaster_id = "synthetic_quake";
  bundle.manifest.fema_code = "9001";
  bundle.manifest.types = {"earthquake"};
  bundle.manifest.start_date = days_from_civil(2014, 8, 24) * kSecondsPerDay;
  bundle.manifest.duration_days = 16;
  bundle.manifest.affected_fips = {"06055"};
  bundle.manifest.vicinity_fips = {"06001", "06055", "06075"};
  bundle.manifest.area_name = "napa";
  bundle.manifest.official_name = "napaearthquake";

  // unit squares side by side
  auto square = [](double lon0) {
    return Ring{{lon0, 0.0}, {lon0 + 1.0, 0.0}, {lon0 + 1.0, 1.0}, {lon0, 1.0}, {lon0, 0.0}};
  };
  bundle.geometry.counties["06055"] = {square(0.0)};
  bundle.geometry.counties["06001"] = {square(2.0)};
  bundle.geometry.counties["06075"] = {square(4.0)};

  const UtcSeconds w0 = bundle.manifest.window_start();
  const std::int64_t window_secs = bundle.manifest.duration_days * kSecondsPerDay;

  std::vector<Tweet> tweets;
  std::size_t next_id = 0;
  auto new_id = [&] {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "t%06zu", next_id++);
    return std::string(buf);
  };

  auto county_lon0 = [](const std::string& fips) {
    if (fips == "06055") return 0.0;
    if (fips == "06001") return 2.0;
    return 4.0;
  };

  for (std::size_t i = 0; i < n_tweets; ++i) {
    Tweet t;
    t.tweet_id = new_id();
    t.user_id = "u" + std::to_string(rng() % 200);

    bool affected = rng() % 100 < 45;
    std::string fips = affected ? "06055" : (rng() % 2 ? "06001" : "06075");
    // half the tweets carry a pre-assigned FIPS, half only coordinates
    if (rng() % 2) {
      t.county_fips = fips;
    } else {
      double lon0 = county_lon0(fips);
      t.lon = lon0 + 0.05 + 0.9 * (static_cast<double>(rng() % 10000) / 10000.0);
      t.lat = 0.05 + 0.9 * (static_cast<double>(rng() % 10000) / 10000.0);
    }

    // early-window bias, quadratic
    double u = static_cast<double>(rng() % 100000) / 100000.0;
    t.timestamp = w0 + static_cast<std::int64_t>(u * u * static_cast<double>(window_secs - 1));

    bool relevant = affected ? (rng() % 100 < 35) : (rng() % 100 < 6);
    if (relevant) {
      std::string text;
      if (rng() % 100 < 30) {
        // user-coined hashtag only, no standalone core keyword token
        text = pick(kCoinedSentences, rng) + " #" + pick(kCoinedHashtags, rng);
      } else {
        text = pick(kCoreSentences, rng);
        if (rng() % 100 < 25) text += " #napaearthquake";
        if (rng() % 100 < 30) text += " #" + pick(kCoinedHashtags, rng);
      }
      text += " " + pick(kThemeWords, rng);
      if (rng() % 100 < 60) text += " " + pick(kAmbiguousWords, rng);
      // negative early, positive later
      double frac = static_cast<double>(t.timestamp - w0) / static_cast<double>(window_secs);
      bool negative = (rng() % 100) < static_cast<std::size_t>(90 - 70 * frac);
      text += " " + (negative ? pick(kNegMarkers, rng) : pick(kPosMarkers, rng));
      t.text = text;
      bundle.planted_relevant_ids.insert(t.tweet_id);
    } else {
      std::string text = pick(kEverydaySentences, rng);
      if (rng() % 100 < 35) text += " " + pick(kAmbiguousWords, rng);
      if (rng() % 100 < 40)
        text += " " + ((rng() % 2) ? pick(kPosMarkers, rng) : pick(kNegMarkers, rng));
      t.text = text;
    }
    t.is_retweet = rng() % 100 < 10;
    tweets.push_back(std::move(t));
  }

  // high-volume spam users: 20 tweets on each of 3 days (threshold 15)
  for (int s = 0; s < 4; ++s) {
    std::string user = "spammer" + std::to_string(s);
    bundle.planted_spam_users.insert(user);
    for (int day = 0; day < 3; ++day) {
      for (int k = 0; k < 20; ++k) {
        Tweet t;
        t.tweet_id = new_id();
        t.user_id = user;
        t.county_fips = s % 2 ? "06001" : "06055";
        t.timestamp = w0 + day * kSecondsPerDay + (k * 3600) % kSecondsPerDay;
        t.text = pick(kSpamSentences, rng);
        tweets.push_back(std::move(t));
      }
    }
  }

  bundle.corpus = Corpus(std::move(tweets));

  // labeled training data mirroring the planted structure
  std::size_t n_examples = 600;
  for (std::size_t i = 0; i < n_examples; ++i) {
    LabeledExample e;
    if (i % 2 == 0) {
      e.label = Label::related;
      std::string text = rng() % 100 < 60 ? pick(kCoreSentences, rng) : pick(kCoinedSentences, rng);
      text += " " + pick(kThemeWords, rng);
      if (rng() % 100 < 60) text += " " + pick(kAmbiguousWords, rng);
      e.text = text;
    } else {
      e.label = Label::not_related;
      std::string text = pick(kEverydaySentences, rng);
      if (rng() % 100 < 5) text += " " + pick(kAmbiguousWords, rng);
      e.text = text;
    }
    e.confidence = 1.0;
    e.source = "other";
    bundle.relevance_examples.push_back(std::move(e));
  }

  return bundle;
}

std::vector<SentimentExample> make_sentiment_corpus(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> pos = {"great",     "awesome", "wonderful", "happy",
                                        "love",      "amazing", "fantastic", "delighted",
                                        "joyful",    "smiling"};
  const std::vector<std::string> neg = {"awful",    "terrible", "horrible",  "sad",
                                        "angry",    "miserable", "depressing", "gloomy",
                                        "upset",    "crying"};
  const std::vector<std::string> filler = {"today", "really", "honestly", "morning",
                                           "evening", "weather", "commute", "weekend"};
  std::vector<SentimentExample> out;
  for (std::size_t i = 0; i < n; ++i) {
    SentimentExample e;
    e.polarity = i % 2 ? Polarity::positive : Polarity::negative;
    const auto& pool = e.polarity == Polarity::positive ? pos : neg;
    std::string text = "feeling " + pick(pool, rng) + " " + pick(filler, rng);
    text += " such a " + pick(pool, rng) + " " + pick(filler, rng);
    if (rng() % 2) text += " " + pick(pool, rng);
    e.text = text;
    out.push_back(std::move(e));
  }
  return out;
}

Corpus inject_spammer(const Corpus& corpus, const std::string& user_id, UtcSeconds day_start,
                      std::size_t n) {
  std::vector<Tweet> tweets = corpus.tweets();
  for (std::size_t k = 0; k < n; ++k) {
    Tweet t;
    t.tweet_id = "spamx" + std::to_string(k);
    t.user_id = user_id;
    t.county_fips = "06055";
    t.timestamp = day_start + static_cast<std::int64_t>(k) % kSecondsPerDay;
    t.text = "repeated promotional content buy now";
    tweets.push_back(std::move(t));
  }
  return Corpus(std::move(tweets));
}

void save_geometry(const CountyGeometry& geom, const std::string& path) {
  json features = json::array();
  for (const auto& [fips, polys] : geom.counties) {
    json coords = json::array();
    for (const auto& ring : polys) {
      json jring = json::array();
      for (const auto& p : ring) jring.push_back({p.lon, p.lat});
      coords.push_back(jring);
    }
    features.push_back({{"type", "Feature"},
                        {"properties", {{"FIPS", fips}}},
                        {"geometry", {{"type", "Polygon"}, {"coordinates", coords}}}});
  }
  json j = {{"type", "FeatureCollection"}, {"features", features}};
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write geometry: " + path);
  out << j.dump();
}

void save_manifest(const DisasterManifest& m, const std::string& path) {
  json j;
  j["disaster_id"] = m.disaster_id;
  j["fema_code"] = m.fema_code;
  j["types"] = m.types;
  j["start_date"] = format_iso8601(m.start_date);
  j["duration_days"] = m.duration_days;
  j["affected_fips"] = m.affected_fips;
  j["vicinity_fips"] = m.vicinity_fips;
  j["keyword_overrides"] = m.keyword_overrides;
  j["area_name"] = m.area_name;
  j["official_name"] = m.official_name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << j.dump(2);
}

void save_training_csv(const std::vector<LabeledExample>& examples, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write training CSV: " + path);
  write_csv_row(out, {"text", "label", "confidence"});
  for (const auto& e : examples) {
    write_csv_row(out, {e.text, e.label == Label::related ? "related" : "not related",
                        e.confidence == 1.0 ? "1.0" : std::to_string(e.confidence)});
  }
}

void save_sentiment_csv(const std::vector<SentimentExample>& examples, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write sentiment CSV: " + path);
  write_csv_row(out, {"polarity", "text"});
  for (const auto& e : examples)
    write_csv_row(out, {e.polarity == Polarity::positive ? "4" : "0", e.text});
}

}  // namespace triage
