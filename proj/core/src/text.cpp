#include "vqi/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <unordered_map>

#include "vqi/error.hpp"

namespace vqi {

namespace {

bool is_stripped_punct(char c) {
  return c == '?' || c == ',' || c == '.' || c == '!' || c == '\'' || c == '"';
}

const std::unordered_map<std::string, std::string>& irregular_plurals() {
  static const std::unordered_map<std::string, std::string> table = {
      {"person", "people"}, {"man", "men"},       {"woman", "women"},
      {"child", "children"}, {"foot", "feet"},    {"tooth", "teeth"},
      {"mouse", "mice"},    {"goose", "geese"},   {"sheep", "sheep"},
  };
  return table;
}

const std::unordered_map<std::string, std::string>& irregular_singulars() {
  static const std::unordered_map<std::string, std::string> table = [] {
    std::unordered_map<std::string, std::string> inv;
    for (const auto& [sing, plur] : irregular_plurals()) inv[plur] = sing;
    // "sheep" inverts to itself.
    inv["sheep"] = "sheep";
    return inv;
  }();
  return table;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(const std::string& s, const char* suffix) {
  const std::size_t n = std::char_traits<char>::length(suffix);
  return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

}  // namespace

TokenSeq normalize(const std::string& text) {
  TokenSeq out;
  std::string current;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      if (!current.empty()) {
        out.tokens.push_back(std::move(current));
        current.clear();
      }
      continue;
    }
    if (is_stripped_punct(static_cast<char>(c))) continue;
    current.push_back(static_cast<char>(std::tolower(c)));
  }
  if (!current.empty()) out.tokens.push_back(std::move(current));
  if (out.tokens.empty())
    throw Error(ErrorCode::EmptyQuestion, "nothing left after normalization");
  return out;
}

std::string join(const TokenSeq& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += seq.tokens[i];
  }
  return out;
}

BowVector bow(const TokenSeq& seq) {
  BowVector v;
  for (const auto& tok : seq.tokens) ++v.counts[tok];
  return v;
}

std::string pluralize_word(const std::string& word) {
  if (auto it = irregular_plurals().find(word); it != irregular_plurals().end())
    return it->second;
  if (word.size() >= 2 && word.back() == 'y' &&
      !is_vowel(word[word.size() - 2]))
    return word.substr(0, word.size() - 1) + "ies";
  if (ends_with(word, "s") || ends_with(word, "x") || ends_with(word, "z") ||
      ends_with(word, "ch") || ends_with(word, "sh"))
    return word + "es";
  return word + "s";
}

std::string singularize_word(const std::string& word) {
  if (auto it = irregular_singulars().find(word);
      it != irregular_singulars().end())
    return it->second;
  if (word.size() >= 4 && ends_with(word, "ies"))
    return word.substr(0, word.size() - 3) + "y";
  if (word.size() >= 3 && ends_with(word, "es")) {
    const std::string stem = word.substr(0, word.size() - 2);
    if (ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
        ends_with(stem, "ch") || ends_with(stem, "sh"))
      return stem;
  }
  if (word.size() >= 2 && word.back() == 's' && !ends_with(word, "ss"))
    return word.substr(0, word.size() - 1);
  return word;
}

bool is_plural_word(const std::string& word) {
  if (irregular_singulars().count(word) && !irregular_plurals().count(word))
    return true;
  return singularize_word(word) != word;
}

TokenSeq pluralize(const TokenSeq& noun_phrase) {
  TokenSeq out = noun_phrase;
  if (!out.tokens.empty()) out.tokens.back() = pluralize_word(out.tokens.back());
  return out;
}

TokenSeq singularize(const TokenSeq& noun_phrase) {
  TokenSeq out = noun_phrase;
  if (!out.tokens.empty())
    out.tokens.back() = singularize_word(out.tokens.back());
  return out;
}

std::optional<long> parse_count(const std::string& answer) {
  static const std::unordered_map<std::string, long> words = {
      {"zero", 0},     {"one", 1},       {"two", 2},      {"three", 3},
      {"four", 4},     {"five", 5},      {"six", 6},      {"seven", 7},
      {"eight", 8},    {"nine", 9},      {"ten", 10},     {"eleven", 11},
      {"twelve", 12},  {"thirteen", 13}, {"fourteen", 14},{"fifteen", 15},
      {"sixteen", 16}, {"seventeen", 17},{"eighteen", 18},{"nineteen", 19},
      {"twenty", 20},
  };
  std::string s;
  for (unsigned char c : answer) {
    if (std::isspace(c)) continue;
    s.push_back(static_cast<char>(std::tolower(c)));
  }
  if (s.empty()) return std::nullopt;
  if (std::all_of(s.begin(), s.end(),
                  [](unsigned char c) { return std::isdigit(c); })) {
    if (s.size() > 9) return std::nullopt;  // out of VQA count range
    return std::stol(s);
  }
  if (auto it = words.find(s); it != words.end()) return it->second;
  return std::nullopt;
}

double cosine_similarity(const BowVector& a, const BowVector& b) {
  if (a.empty() || b.empty())
    throw Error(ErrorCode::EmptyVector, "cosine of an empty bag");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [tok, cnt] : a.counts) {
    na += static_cast<double>(cnt) * cnt;
    if (auto it = b.counts.find(tok); it != b.counts.end())
      dot += static_cast<double>(cnt) * it->second;
  }
  for (const auto& [tok, cnt] : b.counts)
    nb += static_cast<double>(cnt) * cnt;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace vqi
