#ifndef VQI_QUESTION_HPP
#define VQI_QUESTION_HPP

#include <optional>
#include <string>

#include "vqi/text.hpp"

namespace vqi {

enum class QuestionKind { Count, Attribute, YesNo, Other };

const char* question_kind_name(QuestionKind kind);

struct ParsedQuestion {
  QuestionKind kind = QuestionKind::Other;
  std::optional<std::string> attribute_slot;  // set for Attribute
  TokenSeq subject;  // non-empty for Count and Attribute
  TokenSeq source;
};

// Classify a normalized question and extract its subject phrase.
//   Count:     "how many <subject> [are|is|can|do|does|in ...]"
//   Attribute: "what <slot> is|are <subject>..." with slot in
//              {color, kind, type, sport, animal, brand}
//   YesNo:     auxiliary-verb prefix
//   Other:     everything else
// Throws EmptyQuestion on an empty sequence.
ParsedQuestion classify(const TokenSeq& question);

}  // namespace vqi

#endif  // VQI_QUESTION_HPP
