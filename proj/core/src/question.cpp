#include "vqi/question.hpp"

#include <unordered_set>

#include "vqi/error.hpp"

namespace vqi {

namespace {

const std::unordered_set<std::string>& yesno_prefixes() {
  static const std::unordered_set<std::string> set = {
      "is",  "are",  "was",  "were",  "do",   "does",  "did",
      "can", "could", "has", "have", "will", "would", "should"};
  return set;
}

const std::unordered_set<std::string>& count_subject_stops() {
  static const std::unordered_set<std::string> set = {"are", "is", "can",
                                                      "do", "does", "in"};
  return set;
}

const std::unordered_set<std::string>& attribute_slots() {
  static const std::unordered_set<std::string> set = {
      "color", "kind", "type", "sport", "animal", "brand"};
  return set;
}

}  // namespace

const char* question_kind_name(QuestionKind kind) {
  switch (kind) {
    case QuestionKind::Count: return "count";
    case QuestionKind::Attribute: return "attribute";
    case QuestionKind::YesNo: return "yesno";
    case QuestionKind::Other: return "other";
  }
  return "other";
}

ParsedQuestion classify(const TokenSeq& question) {
  if (question.empty())
    throw Error(ErrorCode::EmptyQuestion, "cannot classify an empty question");

  const auto& toks = question.tokens;
  ParsedQuestion pq;
  pq.source = question;

  if (toks.size() >= 3 && toks[0] == "how" && toks[1] == "many") {
    TokenSeq subject;
    for (std::size_t i = 2; i < toks.size(); ++i) {
      if (count_subject_stops().count(toks[i])) break;
      subject.tokens.push_back(toks[i]);
    }
    if (!subject.empty()) {
      pq.kind = QuestionKind::Count;
      pq.subject = std::move(subject);
      return pq;
    }
    pq.kind = QuestionKind::Other;
    return pq;
  }

  if (toks.size() >= 4 && toks[0] == "what" && attribute_slots().count(toks[1]) &&
      (toks[2] == "is" || toks[2] == "are")) {
    TokenSeq subject;
    subject.tokens.assign(toks.begin() + 3, toks.end());
    pq.kind = QuestionKind::Attribute;
    pq.attribute_slot = toks[1];
    pq.subject = std::move(subject);
    return pq;
  }

  if (yesno_prefixes().count(toks[0])) {
    pq.kind = QuestionKind::YesNo;
    return pq;
  }

  pq.kind = QuestionKind::Other;
  return pq;
}

}  // namespace vqi
