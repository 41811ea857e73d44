#ifndef VQI_TEXT_HPP
#define VQI_TEXT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vqi {

// Ordered sequence of lowercase word tokens. Tokens never contain
// whitespace or the punctuation stripped by normalize().
struct TokenSeq {
  std::vector<std::string> tokens;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
  const std::string& front() const { return tokens.front(); }
  const std::string& back() const { return tokens.back(); }

  bool operator==(const TokenSeq&) const = default;
};

// Bag-of-words count vector; every count >= 1.
struct BowVector {
  std::map<std::string, int> counts;

  bool empty() const { return counts.empty(); }
};

// Lowercase, strip `? , . ! ' "`, split on whitespace. Idempotent.
// Throws EmptyQuestion when nothing survives.
TokenSeq normalize(const std::string& text);

// Join tokens with single spaces.
std::string join(const TokenSeq& seq);

BowVector bow(const TokenSeq& seq);

// Pluralize the head (last) noun of the phrase. Irregulars first, then
// -y -> -ies after consonant, -s/-x/-z/-ch/-sh -> -es, else +s.
TokenSeq pluralize(const TokenSeq& noun_phrase);

// Inverse of pluralize on the same rule table; unknown forms unchanged.
TokenSeq singularize(const TokenSeq& noun_phrase);

std::string pluralize_word(const std::string& word);
std::string singularize_word(const std::string& word);

// True for known plural surface forms (irregular plurals or words whose
// singular form differs).
bool is_plural_word(const std::string& word);

// Digit strings and number words zero..twenty; absent otherwise.
std::optional<long> parse_count(const std::string& answer);

// Cosine of two count vectors over the union vocabulary, in [0,1].
// Throws EmptyVector on an empty input.
double cosine_similarity(const BowVector& a, const BowVector& b);

}  // namespace vqi

#endif  // VQI_TEXT_HPP
