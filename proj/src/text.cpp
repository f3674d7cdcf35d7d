#include "triage/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace triage {

const EmojiTable& builtin_emoji_table() {
  static const EmojiTable table = [] {
    EmojiTable t = {
        {":-)", "happy"},  {":)", "happy"},   {";-)", "happy"},  {";)", "happy"},
        {":-D", "happy"},  {":D", "happy"},   {"=)", "happy"},   {"^_^", "happy"},
        {":'(", "sad"},    {":-(", "sad"},    {":(", "sad"},     {"=(", "sad"},
        {";(", "sad"},     {":-/", "unsure"}, {":/", "unsure"},  {":-|", "neutral"},
        {":|", "neutral"}, {":-o", "surprised"}, {":o", "surprised"},
        {":-P", "playful"}, {":P", "playful"}, {"xD", "laugh"},  {"XD", "laugh"},
        {"<3", "love"},    {"</3", "heartbroken"},
        {"\xF0\x9F\x98\x80", "happy"},      // grinning face
        {"\xF0\x9F\x98\x82", "laugh"},      // tears of joy
        {"\xF0\x9F\x98\xAD", "crying"},     // loudly crying
        {"\xF0\x9F\x98\xA2", "sad"},        // crying face
        {"\xF0\x9F\x98\xA1", "angry"},      // pouting face
        {"\xF0\x9F\x98\xB1", "scared"},     // screaming in fear
        {"\xF0\x9F\x99\x8F", "pray"},       // folded hands
        {"\xF0\x9F\x91\x8D", "good"},       // thumbs up
        {"\xF0\x9F\x91\x8E", "bad"},        // thumbs down
        {"\xE2\x9D\xA4", "love"},           // red heart
        {"\xF0\x9F\x94\xA5", "fire"},       // fire
        {"\xF0\x9F\x92\x94", "heartbroken"} // broken heart
    };
    // longest-first so ":-)" wins over ":)" and "</3" over "<3"
    std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
      return a.first.size() > b.first.size();
    });
    return t;
  }();
  return table;
}

EmojiTable load_emoji_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open emoji table: " + path);
  EmojiTable t = builtin_emoji_table();
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) continue;
    t.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return a.first.size() > b.first.size();
  });
  return t;
}

namespace {

std::string strip_html_tags(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<') {
      size_t close = s.find_first_of("<>", i + 1);
      if (close != std::string::npos && s[close] == '>') {
        i = close + 1;
        continue;
      }
    }
    out += s[i++];
  }
  return out;
}

std::string replace_emoji(const std::string& s, const EmojiTable& emoji) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    bool matched = false;
    for (const auto& [pat, word] : emoji) {
      if (s.compare(i, pat.size(), pat) == 0) {
        out += ' ';
        out += word;
        out += ' ';
        i += pat.size();
        matched = true;
        break;
      }
    }
    if (!matched) out += s[i++];
  }
  return out;
}

inline bool token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  return tokenize(text, builtin_emoji_table());
}

std::vector<std::string> tokenize(const std::string& text, const EmojiTable& emoji) {
  std::string s = replace_emoji(strip_html_tags(text), emoji);
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    // bare '#'/'@' is not a token
    if (!cur.empty() && cur != "#" && cur != "@") tokens.push_back(cur);
    cur.clear();
  };
  for (char raw : s) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (c >= 0x80) continue;  // non-ASCII dropped
    char lc = static_cast<char>(std::tolower(c));
    if (token_char(lc)) {
      cur += lc;
    } else if (lc == '#' || lc == '@') {
      flush();
      cur += lc;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> segment_hashtag(const std::string& tag,
                                         const std::set<std::string>& wordlist) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (pos < tag.size()) {
    size_t best = 0;
    for (size_t len = tag.size() - pos; len >= 1; --len) {
      if (wordlist.count(tag.substr(pos, len))) {
        best = len;
        break;
      }
    }
    if (best == 0) return {tag};
    parts.push_back(tag.substr(pos, best));
    pos += best;
  }
  if (parts.empty()) return {tag};
  return parts;
}

}  // namespace triage
