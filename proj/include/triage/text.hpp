#pragma once

#include <set>
#include <string>
#include <vector>

namespace triage {

// emoji/emoticon -> replacement word, matched longest-first
using EmojiTable = std::vector<std::pair<std::string, std::string>>;

const EmojiTable& builtin_emoji_table();

// Lines "<emoji>\t<word>"; merged on top of the built-in table.
EmojiTable load_emoji_table(const std::string& path);

// Lowercased ASCII tokens; HTML-tag-shaped substrings stripped, emoji
// replaced by words, '#'/'@' kept as token prefixes.
std::vector<std::string> tokenize(const std::string& text);
std::vector<std::string> tokenize(const std::string& text, const EmojiTable& emoji);

// Greedy longest-prefix split; [tag] unchanged when the whole tag cannot
// be consumed.
std::vector<std::string> segment_hashtag(const std::string& tag,
                                         const std::set<std::string>& wordlist);

}  // namespace triage
