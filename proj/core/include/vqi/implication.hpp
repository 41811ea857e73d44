#ifndef VQI_IMPLICATION_HPP
#define VQI_IMPLICATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vqi/question.hpp"
#include "vqi/text.hpp"

namespace vqi {

struct QAPair;

// Three-way knob selecting the implication category.
enum class ImplicationType { Logeq, Nec, Mutex };

const char* implication_type_name(ImplicationType t);  // logeq | nec | mutex
std::optional<ImplicationType> implication_type_from_name(const std::string&);

struct Implication {
  std::int64_t source_question_id = 0;
  ImplicationType itype = ImplicationType::Logeq;
  TokenSeq question;
  std::string answer;   // "yes" for Logeq/Nec, "no" for Mutex
  std::string surface;  // capitalized, trailing "?"
};

enum class SkipReason { YesNoSource, ZeroCount, UnsupportedKind,
                        NonNumericCountAnswer };

const char* skip_reason_name(SkipReason r);

struct GenerationOutcome {
  std::vector<Implication> produced;
  std::optional<SkipReason> skipped_reason;  // set iff produced is empty
};

// G : (Q, A, knob) -> (Q_imp, A_imp). Absent when the (kind, knob, answer)
// combination is ungenerable: yes/no sources, count answers of 0,
// non-numeric count answers, unsupported kinds.
std::optional<Implication> generate(const ParsedQuestion& pq,
                                    const std::string& answer,
                                    ImplicationType knob);

// All generable knobs in order [Logeq, Nec, Mutex]; records the skip
// reason when nothing is generable.
GenerationOutcome generate_all(const ParsedQuestion& pq,
                               const std::string& answer);

struct CoverageStats {
  double eligible_fraction = 0.0;
  std::size_t total = 0;
  std::size_t eligible = 0;
  std::map<std::string, std::size_t> per_kind_counts;     // kind -> pairs
  std::map<std::string, std::size_t> per_type_generated;  // itype -> count
};

CoverageStats coverage(const std::vector<QAPair>& corpus);

}  // namespace vqi

#endif  // VQI_IMPLICATION_HPP
