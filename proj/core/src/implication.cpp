#include "vqi/implication.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

#include "vqi/dataset.hpp"
#include "vqi/error.hpp"

namespace vqi {

namespace {

std::string make_surface(const TokenSeq& q) {
  std::string s = join(q);
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(s[0]));
  s.push_back('?');
  return s;
}

const std::vector<std::string>& slot_values(const std::string& slot) {
  static const std::vector<std::string> colors = {
      "red", "blue", "green", "yellow", "black", "white",
      "brown", "orange", "pink", "purple", "gray"};
  static const std::vector<std::string> sports = {
      "tennis", "baseball", "soccer", "basketball", "football",
      "skiing", "surfing", "skateboarding", "frisbee", "snowboarding"};
  static const std::vector<std::string> animals = {
      "dog", "cat", "horse", "sheep", "cow", "elephant",
      "giraffe", "zebra", "bear", "bird"};
  static const std::vector<std::string> brands = {
      "nike", "adidas", "apple", "samsung", "sony", "honda", "toyota"};
  // kind/type answers are open-class; a shared generic list keeps the
  // wrap-around rule total.
  static const std::vector<std::string> generic = {
      "wooden", "metal", "plastic", "glass", "ceramic"};
  if (slot == "color") return colors;
  if (slot == "sport") return sports;
  if (slot == "animal") return animals;
  if (slot == "brand") return brands;
  return generic;
}

std::string next_distractor(const std::string& slot, const std::string& answer) {
  const auto& values = slot_values(slot);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == answer) return values[(i + 1) % values.size()];
  return values.front();
}

bool starts_with_vowel(const std::string& word) {
  if (word.empty()) return false;
  char c = word[0];
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

const std::unordered_set<std::string>& determiners() {
  static const std::unordered_set<std::string> set = {
      "the", "a", "an", "this", "that", "these", "those"};
  return set;
}

std::optional<Implication> make(const ParsedQuestion& pq, ImplicationType knob,
                                TokenSeq question, std::string answer) {
  Implication imp;
  imp.itype = knob;
  imp.answer = std::move(answer);
  imp.surface = make_surface(question);
  imp.question = std::move(question);
  return imp;
}

std::optional<Implication> generate_count(const ParsedQuestion& pq,
                                          long count, ImplicationType knob) {
  if (count == 0) return std::nullopt;
  TokenSeq q;
  switch (knob) {
    case ImplicationType::Logeq: {
      if (count == 1) {
        q.tokens = {"is", "there", "1"};
        const TokenSeq subj = singularize(pq.subject);
        q.tokens.insert(q.tokens.end(), subj.tokens.begin(), subj.tokens.end());
      } else {
        q.tokens = {"are", "there", std::to_string(count)};
        const TokenSeq subj = pluralize(singularize(pq.subject));
        q.tokens.insert(q.tokens.end(), subj.tokens.begin(), subj.tokens.end());
      }
      return make(pq, knob, std::move(q), "yes");
    }
    case ImplicationType::Nec: {
      q.tokens = {"are", "there", "any"};
      const TokenSeq subj = pluralize(singularize(pq.subject));
      q.tokens.insert(q.tokens.end(), subj.tokens.begin(), subj.tokens.end());
      return make(pq, knob, std::move(q), "yes");
    }
    case ImplicationType::Mutex: {
      q.tokens = {"are", "there", std::to_string(count + 1)};
      const TokenSeq subj = pluralize(singularize(pq.subject));
      q.tokens.insert(q.tokens.end(), subj.tokens.begin(), subj.tokens.end());
      return make(pq, knob, std::move(q), "no");
    }
  }
  return std::nullopt;
}

std::optional<Implication> generate_attribute(const ParsedQuestion& pq,
                                              const std::string& raw_answer,
                                              ImplicationType knob) {
  TokenSeq answer_tokens;
  try {
    answer_tokens = normalize(raw_answer);
  } catch (const Error&) {
    return std::nullopt;
  }
  const std::string& head = pq.subject.back();
  const bool plural = is_plural_word(head);
  const std::string copula = plural ? "are" : "is";
  TokenSeq q;
  switch (knob) {
    case ImplicationType::Logeq: {
      q.tokens = {copula};
      q.tokens.insert(q.tokens.end(), pq.subject.tokens.begin(),
                      pq.subject.tokens.end());
      q.tokens.insert(q.tokens.end(), answer_tokens.tokens.begin(),
                      answer_tokens.tokens.end());
      return make(pq, knob, std::move(q), "yes");
    }
    case ImplicationType::Mutex: {
      const std::string distractor =
          next_distractor(*pq.attribute_slot, join(answer_tokens));
      if (distractor == join(answer_tokens)) return std::nullopt;
      q.tokens = {copula};
      q.tokens.insert(q.tokens.end(), pq.subject.tokens.begin(),
                      pq.subject.tokens.end());
      q.tokens.push_back(distractor);
      return make(pq, knob, std::move(q), "no");
    }
    case ImplicationType::Nec: {
      if (plural) {
        q.tokens = {"are", "there", head};
      } else {
        std::string det;
        if (determiners().count(pq.subject.front()) && pq.subject.size() > 1)
          det = pq.subject.front();
        else
          det = starts_with_vowel(head) ? "an" : "a";
        q.tokens = {"is", "there", det, head};
      }
      return make(pq, knob, std::move(q), "yes");
    }
  }
  return std::nullopt;
}

}  // namespace

const char* implication_type_name(ImplicationType t) {
  switch (t) {
    case ImplicationType::Logeq: return "logeq";
    case ImplicationType::Nec: return "nec";
    case ImplicationType::Mutex: return "mutex";
  }
  return "logeq";
}

std::optional<ImplicationType> implication_type_from_name(
    const std::string& name) {
  if (name == "logeq") return ImplicationType::Logeq;
  if (name == "nec") return ImplicationType::Nec;
  if (name == "mutex") return ImplicationType::Mutex;
  return std::nullopt;
}

const char* skip_reason_name(SkipReason r) {
  switch (r) {
    case SkipReason::YesNoSource: return "YesNoSource";
    case SkipReason::ZeroCount: return "ZeroCount";
    case SkipReason::UnsupportedKind: return "UnsupportedKind";
    case SkipReason::NonNumericCountAnswer: return "NonNumericCountAnswer";
  }
  return "UnsupportedKind";
}

std::optional<Implication> generate(const ParsedQuestion& pq,
                                    const std::string& answer,
                                    ImplicationType knob) {
  switch (pq.kind) {
    case QuestionKind::YesNo:
    case QuestionKind::Other:
      return std::nullopt;
    case QuestionKind::Count: {
      if (pq.subject.empty())
        throw Error(ErrorCode::InvalidInput, "count question without subject");
      const auto count = parse_count(answer);
      if (!count) return std::nullopt;
      return generate_count(pq, *count, knob);
    }
    case QuestionKind::Attribute: {
      if (pq.subject.empty() || !pq.attribute_slot)
        throw Error(ErrorCode::InvalidInput,
                    "attribute question without subject or slot");
      return generate_attribute(pq, answer, knob);
    }
  }
  return std::nullopt;
}

GenerationOutcome generate_all(const ParsedQuestion& pq,
                               const std::string& answer) {
  GenerationOutcome out;
  for (ImplicationType knob :
       {ImplicationType::Logeq, ImplicationType::Nec, ImplicationType::Mutex}) {
    if (auto imp = generate(pq, answer, knob))
      out.produced.push_back(std::move(*imp));
  }
  if (out.produced.empty()) {
    switch (pq.kind) {
      case QuestionKind::YesNo:
        out.skipped_reason = SkipReason::YesNoSource;
        break;
      case QuestionKind::Count:
        out.skipped_reason = parse_count(answer)
                                 ? SkipReason::ZeroCount
                                 : SkipReason::NonNumericCountAnswer;
        break;
      default:
        out.skipped_reason = SkipReason::UnsupportedKind;
        break;
    }
  }
  return out;
}

CoverageStats coverage(const std::vector<QAPair>& corpus) {
  CoverageStats stats;
  stats.total = corpus.size();
  for (const QAPair& qa : corpus) {
    ParsedQuestion pq;
    try {
      pq = classify(normalize(qa.question));
    } catch (const Error&) {
      pq.kind = QuestionKind::Other;
    }
    ++stats.per_kind_counts[question_kind_name(pq.kind)];
    GenerationOutcome out = generate_all(pq, qa.answer);
    if (!out.produced.empty()) ++stats.eligible;
    for (const Implication& imp : out.produced)
      ++stats.per_type_generated[implication_type_name(imp.itype)];
  }
  stats.eligible_fraction =
      stats.total == 0 ? 0.0
                       : static_cast<double>(stats.eligible) /
                             static_cast<double>(stats.total);
  return stats;
}

}  // namespace vqi
