#ifndef VQI_DATASET_HPP
#define VQI_DATASET_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vqi/metrics_vqa.hpp"

namespace vqi {

struct QAPair {
  std::int64_t question_id = 0;
  std::int64_t image_id = 0;
  std::string question;
  std::string answer;
  std::optional<std::vector<std::string>> human_answers;  // exactly 10 if set
};

struct ImplicationRecord {
  std::int64_t implication_id = 0;
  std::int64_t source_question_id = 0;
  std::int64_t image_id = 0;
  std::string itype;     // "logeq" | "nec" | "mutex"
  std::string question;  // surface form
  std::string answer;    // "yes" | "no"
};

struct RephrasingGroup {
  std::int64_t original_question_id = 0;
  std::vector<std::int64_t> rephrasing_ids;
};

struct RephrasingFile {
  std::vector<RephrasingGroup> groups;
  std::vector<QAPair> questions;  // the rephrasings themselves
};

// Implication ids are source_question_id * 10 + {1,2,3} for
// logeq/nec/mutex, keeping joins arithmetic and collision-free.
std::int64_t implication_id_for(std::int64_t source_question_id,
                                const std::string& itype);

// VQA v2.0 questions file: {"questions":[{question_id,image_id,question}]}.
std::vector<QAPair> read_vqa_questions(const std::string& path);

// VQA v2.0 annotations file: {"annotations":[{question_id,
// multiple_choice_answer, answers:[{answer}x10]}]}.
struct Annotation {
  std::string answer;
  std::vector<std::string> human_answers;
};
std::map<std::int64_t, Annotation> read_vqa_annotations(const std::string& path);

// Merge annotations into question records by id.
// Throws DanglingAnnotation for ids with no matching question.
void merge_annotations(std::vector<QAPair>& questions,
                       const std::map<std::int64_t, Annotation>& annotations);

// Results file: JSON array of {question_id, answer}.
PredictionSet read_predictions(const std::string& path);

// {"implications":[...]} with fixed key order; write∘read is the identity.
void write_implications(const std::vector<ImplicationRecord>& records,
                        const std::string& path);
std::string implications_to_json(const std::vector<ImplicationRecord>& records);
std::vector<ImplicationRecord> read_implications(const std::string& path);

// Accepts either {"groups":[{original_question_id, rephrasings:[...]}]} or
// a flat {"questions":[{..., rephrasing_of}]} layout.
RephrasingFile read_rephrasings(const std::string& path);

// Line-delimited JSON {question_id, weights:[...]}.
std::vector<AttentionMap> read_attention_maps(const std::string& path);

}  // namespace vqi

#endif  // VQI_DATASET_HPP
