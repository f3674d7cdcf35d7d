#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "triage/parallel.hpp"
#include "triage/tweet.hpp"

namespace triage {

enum class KeywordMatchMode { substring, token };

// disaster type -> lowercase keyword phrases
using CoreKeywordSet = std::map<std::string, std::vector<std::string>>;

// Default per-type keyword lists; the wildfire list keeps the published
// spellings ("buring", "framing") verbatim.
const CoreKeywordSet& default_core_keywords();

// Union of keyword lists for a set of types, plus overrides.
std::vector<std::string> keywords_for_types(const std::set<std::string>& types,
                                            const std::vector<std::string>& overrides = {});

enum class LedgerStatus { candidate, accepted, rejected };

struct LedgerEntry {
  std::string hashtag;  // without '#'
  std::size_t count = 0;
  LedgerStatus status = LedgerStatus::candidate;
  std::optional<UtcSeconds> decided_at;
  std::string note;
};

class HashtagLedger {
 public:
  HashtagLedger() = default;

  // Adds unseen candidates, refreshes counts of known ones; never touches
  // decisions.
  void merge_candidates(const std::vector<std::pair<std::string, std::size_t>>& candidates);

  bool decide(const std::string& hashtag, LedgerStatus status, UtcSeconds when,
              const std::string& note = {});

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  const LedgerEntry* find(const std::string& hashtag) const;
  std::vector<const LedgerEntry*> pending() const;
  std::set<std::string> accepted() const;

  static HashtagLedger load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::vector<LedgerEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

struct TermSet {
  std::vector<std::string> keywords;
  std::set<std::string> hashtags;  // accepted, without '#'
};

// Hashtag is a candidate iff any keyword (spaces removed for phrases) is a
// contiguous substring; sorted by descending count then lexicographic.
std::vector<std::pair<std::string, std::size_t>> expand_candidates(
    const std::vector<std::string>& keywords, const HashtagDict& dict);

TermSet final_terms(const std::vector<std::string>& keywords, const HashtagLedger& ledger);

bool classify_matching(const Tweet& tweet, const TermSet& terms,
                       KeywordMatchMode mode = KeywordMatchMode::substring);

// Baseline: hashtag <type>, <area><type>, <official_name>, or a core
// keyword as a standalone token.
bool classify_conventional(const Tweet& tweet, const std::vector<std::string>& keywords,
                           const std::set<std::string>& types, const std::string& area_name,
                           const std::string& official_name);

// 100*(ours-conventional)/conventional; nullopt when conventional is 0.
std::optional<double> improvement(std::size_t n_ours, std::size_t n_conventional);

std::vector<char> match_batch(const std::vector<Tweet>& tweets, const TermSet& terms,
                              KeywordMatchMode mode, ExecMode exec);
std::vector<char> match_batch(const std::vector<Tweet>& tweets, const TermSet& terms,
                              KeywordMatchMode mode = KeywordMatchMode::substring);

// Interactive candidate review. Reads single-letter commands from `in`
// (a=accept r=reject s=skip q=quit), persists the ledger after every
// decision, shows up to 5 most recent matching tweets per candidate.
struct ReviewResult {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t skipped = 0;
  bool quit = false;
};
ReviewResult review_session(HashtagLedger& ledger, const std::string& ledger_path,
                            const Corpus& corpus, std::istream& in, std::ostream& out,
                            UtcSeconds now);

}  // namespace triage
