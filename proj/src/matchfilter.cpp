#include "triage/matchfilter.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "triage/csvio.hpp"
#include "triage/text.hpp"

namespace triage {

const CoreKeywordSet& default_core_keywords() {
  static const CoreKeywordSet kw = {
      {"earthquake", {"quake", "tremor", "foreshock", "aftershock"}},
      {"flood",
       {"flood", "storm", "typhoon", "tornado", "hurricane", "mudslide", "strong wind",
        "high water"}},
      {"wildfire", {"fire", "firing", "burn", "buring", "blaze", "blazing", "flame", "framing"}},
  };
  return kw;
}

std::vector<std::string> keywords_for_types(const std::set<std::string>& types,
                                            const std::vector<std::string>& overrides) {
  std::vector<std::string> out;
  const auto& defaults = default_core_keywords();
  for (const auto& t : types) {
    auto it = defaults.find(t);
    if (it == defaults.end()) throw std::runtime_error("unknown disaster type: " + t);
    for (const auto& k : it->second)
      if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  for (const auto& k : overrides)
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  return out;
}

void HashtagLedger::merge_candidates(
    const std::vector<std::pair<std::string, std::size_t>>& candidates) {
  for (const auto& [tag, count] : candidates) {
    auto it = index_.find(tag);
    if (it == index_.end()) {
      index_[tag] = entries_.size();
      entries_.push_back({tag, count, LedgerStatus::candidate, std::nullopt, {}});
    } else {
      entries_[it->second].count = count;
    }
  }
}

bool HashtagLedger::decide(const std::string& hashtag, LedgerStatus status, UtcSeconds when,
                           const std::string& note) {
  auto it = index_.find(hashtag);
  if (it == index_.end()) return false;
  LedgerEntry& e = entries_[it->second];
  e.status = status;
  if (status == LedgerStatus::candidate) {
    e.decided_at.reset();
  } else {
    e.decided_at = when;
  }
  if (!note.empty()) e.note = note;
  return true;
}

const LedgerEntry* HashtagLedger::find(const std::string& hashtag) const {
  auto it = index_.find(hashtag);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::vector<const LedgerEntry*> HashtagLedger::pending() const {
  std::vector<const LedgerEntry*> out;
  for (const auto& e : entries_)
    if (e.status == LedgerStatus::candidate) out.push_back(&e);
  return out;
}

std::set<std::string> HashtagLedger::accepted() const {
  std::set<std::string> out;
  for (const auto& e : entries_)
    if (e.status == LedgerStatus::accepted) out.insert(e.hashtag);
  return out;
}

namespace {

const char* status_name(LedgerStatus s) {
  switch (s) {
    case LedgerStatus::candidate: return "candidate";
    case LedgerStatus::accepted: return "accepted";
    case LedgerStatus::rejected: return "rejected";
  }
  return "candidate";
}

LedgerStatus parse_status(const std::string& s) {
  if (s == "accepted") return LedgerStatus::accepted;
  if (s == "rejected") return LedgerStatus::rejected;
  if (s == "candidate") return LedgerStatus::candidate;
  throw std::runtime_error("ledger: unknown status '" + s + "'");
}

}  // namespace

HashtagLedger HashtagLedger::load(const std::string& path) {
  auto rows = read_csv_file(path);
  if (rows.empty()) throw std::runtime_error("ledger: empty file " + path);
  const std::vector<std::string> header = {"hashtag", "count", "status", "decided_at", "note"};
  if (rows[0] != header) throw std::runtime_error("ledger: unexpected header in " + path);
  HashtagLedger ledger;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 5)
      throw std::runtime_error("ledger: row " + std::to_string(i + 1) + " has wrong field count");
    LedgerEntry e;
    e.hashtag = r[0];
    e.count = std::stoull(r[1]);
    e.status = parse_status(r[2]);
    if (!r[3].empty()) {
      auto t = parse_iso8601(r[3]);
      if (!t) throw std::runtime_error("ledger: bad decided_at in row " + std::to_string(i + 1));
      e.decided_at = *t;
    }
    e.note = r[4];
    if (e.status != LedgerStatus::candidate && !e.decided_at)
      throw std::runtime_error("ledger: decided entry without decided_at: " + e.hashtag);
    if (ledger.index_.count(e.hashtag))
      throw std::runtime_error("ledger: duplicate hashtag " + e.hashtag);
    ledger.index_[e.hashtag] = ledger.entries_.size();
    ledger.entries_.push_back(std::move(e));
  }
  return ledger;
}

void HashtagLedger::save(const std::string& path) const {
  // write to a temp file then rename, so an interrupted save leaves the
  // previous ledger intact
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("ledger: cannot write " + tmp);
    write_csv_row(out, {"hashtag", "count", "status", "decided_at", "note"});
    for (const auto& e : entries_) {
      write_csv_row(out, {e.hashtag, std::to_string(e.count), status_name(e.status),
                          e.decided_at ? format_iso8601(*e.decided_at) : std::string{}, e.note});
    }
    if (!out) throw std::runtime_error("ledger: write failure on " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("ledger: cannot rename " + tmp + " to " + path);
}

namespace {

std::string despace(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::size_t>> expand_candidates(
    const std::vector<std::string>& keywords, const HashtagDict& dict) {
  std::vector<std::string> needles;
  for (const auto& k : keywords) needles.push_back(despace(lower(k)));
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& [tag, count] : dict) {
    for (const auto& n : needles) {
      if (!n.empty() && tag.find(n) != std::string::npos) {
        out.emplace_back(tag, count);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

TermSet final_terms(const std::vector<std::string>& keywords, const HashtagLedger& ledger) {
  TermSet t;
  t.keywords = keywords;
  t.hashtags = ledger.accepted();
  return t;
}

namespace {

bool contains_token_sequence(const std::vector<std::string>& tokens,
                             const std::vector<std::string>& phrase) {
  if (phrase.empty() || tokens.size() < phrase.size()) return false;
  for (size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
    bool ok = true;
    for (size_t j = 0; j < phrase.size(); ++j) {
      if (tokens[i + j] != phrase[j]) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

std::vector<std::string> split_words(const std::string& phrase) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : phrase) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

bool classify_matching(const Tweet& tweet, const TermSet& terms, KeywordMatchMode mode) {
  auto tokens = tokenize(tweet.text);
  for (const auto& tok : tokens) {
    if (tok.size() > 1 && tok[0] == '#' && terms.hashtags.count(tok.substr(1))) return true;
  }
  if (mode == KeywordMatchMode::substring) {
    std::string text = lower(tweet.text);
    for (const auto& k : terms.keywords) {
      if (!k.empty() && text.find(lower(k)) != std::string::npos) return true;
    }
  } else {
    for (const auto& k : terms.keywords) {
      if (contains_token_sequence(tokens, split_words(lower(k)))) return true;
    }
  }
  return false;
}

bool classify_conventional(const Tweet& tweet, const std::vector<std::string>& keywords,
                           const std::set<std::string>& types, const std::string& area_name,
                           const std::string& official_name) {
  auto tokens = tokenize(tweet.text);
  std::set<std::string> wanted_tags;
  for (const auto& t : types) {
    wanted_tags.insert(t);
    if (!area_name.empty()) wanted_tags.insert(area_name + t);
  }
  if (!official_name.empty()) wanted_tags.insert(official_name);
  for (const auto& tok : tokens) {
    if (tok.size() > 1 && tok[0] == '#' && wanted_tags.count(tok.substr(1))) return true;
  }
  for (const auto& k : keywords) {
    if (contains_token_sequence(tokens, split_words(lower(k)))) return true;
  }
  return false;
}

std::optional<double> improvement(std::size_t n_ours, std::size_t n_conventional) {
  if (n_conventional == 0) return std::nullopt;
  return 100.0 *
         (static_cast<double>(n_ours) - static_cast<double>(n_conventional)) /
         static_cast<double>(n_conventional);
}

std::vector<char> match_batch(const std::vector<Tweet>& tweets, const TermSet& terms,
                              KeywordMatchMode mode, ExecMode exec) {
  return map_indexed<char>(
      tweets.size(),
      [&](std::size_t i) { return classify_matching(tweets[i], terms, mode) ? 1 : 0; }, exec);
}

std::vector<char> match_batch(const std::vector<Tweet>& tweets, const TermSet& terms,
                              KeywordMatchMode mode) {
  return match_batch(tweets, terms, mode, default_exec_mode());
}

ReviewResult review_session(HashtagLedger& ledger, const std::string& ledger_path,
                            const Corpus& corpus, std::istream& in, std::ostream& out,
                            UtcSeconds now) {
  ReviewResult result;
  auto pending = ledger.pending();
  std::vector<std::string> queue;
  for (const auto* e : pending) queue.push_back(e->hashtag);

  for (const auto& tag : queue) {
    const LedgerEntry* e = ledger.find(tag);
    if (!e || e->status != LedgerStatus::candidate) continue;

    // up to 5 most recent tweets carrying the hashtag
    std::vector<const Tweet*> samples;
    for (const Tweet& t : corpus.tweets()) {
      std::string needle = "#" + tag;
      if (lower(t.text).find(needle) != std::string::npos) samples.push_back(&t);
    }
    std::sort(samples.begin(), samples.end(),
              [](const Tweet* a, const Tweet* b) { return a->timestamp > b->timestamp; });
    if (samples.size() > 5) samples.resize(5);

    out << "\n#" << tag << "  (" << e->count << " occurrences)\n";
    for (const Tweet* t : samples) out << "  | " << t->text << "\n";
    out << "[a]ccept / [r]eject / [s]kip / [q]uit > " << std::flush;

    std::string cmd;
    if (!std::getline(in, cmd)) {
      result.quit = true;
      break;
    }
    if (cmd == "a") {
      ledger.decide(tag, LedgerStatus::accepted, now);
      ledger.save(ledger_path);
      ++result.accepted;
    } else if (cmd == "r") {
      ledger.decide(tag, LedgerStatus::rejected, now);
      ledger.save(ledger_path);
      ++result.rejected;
    } else if (cmd == "q") {
      result.quit = true;
      break;
    } else {
      ++result.skipped;
    }
  }
  return result;
}

}  // namespace triage
