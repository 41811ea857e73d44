#include "vqi/dataset.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vqi/error.hpp"

namespace vqi {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded())
    throw Error(ErrorCode::MalformedJson, "invalid JSON in " + path);
  return doc;
}

const json& field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end())
    throw Error(ErrorCode::MissingField, name);
  return *it;
}

std::int64_t int_field(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_number_integer())
    throw Error(ErrorCode::MalformedJson,
                std::string(name) + " is not an integer");
  return v.get<std::int64_t>();
}

std::string string_field(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_string())
    throw Error(ErrorCode::MalformedJson,
                std::string(name) + " is not a string");
  return v.get<std::string>();
}

}  // namespace

std::int64_t implication_id_for(std::int64_t source_question_id,
                                const std::string& itype) {
  std::int64_t tag = 0;
  if (itype == "logeq") tag = 1;
  else if (itype == "nec") tag = 2;
  else if (itype == "mutex") tag = 3;
  else throw Error(ErrorCode::InvalidInput, "unknown implication type " + itype);
  return source_question_id * 10 + tag;
}

std::vector<QAPair> read_vqa_questions(const std::string& path) {
  const json doc = load_json(path);
  if (!doc.is_object() || !doc.contains("questions") ||
      !doc["questions"].is_array())
    throw Error(ErrorCode::MalformedJson,
                path + " has no top-level \"questions\" array");
  std::vector<QAPair> out;
  std::set<std::int64_t> seen;
  for (const json& rec : doc["questions"]) {
    QAPair qa;
    qa.question_id = int_field(rec, "question_id");
    qa.image_id = int_field(rec, "image_id");
    qa.question = string_field(rec, "question");
    if (!seen.insert(qa.question_id).second)
      throw Error(ErrorCode::DuplicateId,
                  "question_id " + std::to_string(qa.question_id));
    out.push_back(std::move(qa));
  }
  return out;
}

std::map<std::int64_t, Annotation> read_vqa_annotations(
    const std::string& path) {
  const json doc = load_json(path);
  if (!doc.is_object() || !doc.contains("annotations") ||
      !doc["annotations"].is_array())
    throw Error(ErrorCode::MalformedJson,
                path + " has no top-level \"annotations\" array");
  std::map<std::int64_t, Annotation> out;
  for (const json& rec : doc["annotations"]) {
    const std::int64_t qid = int_field(rec, "question_id");
    Annotation ann;
    ann.answer = string_field(rec, "multiple_choice_answer");
    const json& answers = field(rec, "answers");
    if (!answers.is_array())
      throw Error(ErrorCode::MalformedJson, "answers is not an array");
    if (answers.size() != 10)
      throw Error(ErrorCode::AnswerCountNot10,
                  "question " + std::to_string(qid) + " has " +
                      std::to_string(answers.size()) + " answers");
    for (const json& a : answers)
      ann.human_answers.push_back(string_field(a, "answer"));
    if (!out.emplace(qid, std::move(ann)).second)
      throw Error(ErrorCode::DuplicateId, "question_id " + std::to_string(qid));
  }
  return out;
}

void merge_annotations(std::vector<QAPair>& questions,
                       const std::map<std::int64_t, Annotation>& annotations) {
  std::set<std::int64_t> known;
  for (QAPair& qa : questions) {
    known.insert(qa.question_id);
    auto it = annotations.find(qa.question_id);
    if (it == annotations.end()) continue;
    qa.answer = it->second.answer;
    qa.human_answers = it->second.human_answers;
  }
  for (const auto& [qid, ann] : annotations)
    if (!known.count(qid))
      throw Error(ErrorCode::DanglingAnnotation,
                  "question_id " + std::to_string(qid));
}

PredictionSet read_predictions(const std::string& path) {
  const json doc = load_json(path);
  if (!doc.is_array())
    throw Error(ErrorCode::MalformedJson, path + " is not a JSON array");
  PredictionSet out;
  for (const json& rec : doc) {
    const std::int64_t qid = int_field(rec, "question_id");
    if (!out.answers.emplace(qid, string_field(rec, "answer")).second)
      throw Error(ErrorCode::DuplicateId, "question_id " + std::to_string(qid));
  }
  return out;
}

std::string implications_to_json(const std::vector<ImplicationRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const ImplicationRecord& rec : records) {
    ordered_json obj;
    obj["implication_id"] = rec.implication_id;
    obj["source_question_id"] = rec.source_question_id;
    obj["image_id"] = rec.image_id;
    obj["itype"] = rec.itype;
    obj["question"] = rec.question;
    obj["answer"] = rec.answer;
    arr.push_back(std::move(obj));
  }
  ordered_json doc;
  doc["implications"] = std::move(arr);
  return doc.dump();
}

void write_implications(const std::vector<ImplicationRecord>& records,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << implications_to_json(records);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

std::vector<ImplicationRecord> read_implications(const std::string& path) {
  const json doc = load_json(path);
  if (!doc.is_object() || !doc.contains("implications") ||
      !doc["implications"].is_array())
    throw Error(ErrorCode::MalformedJson,
                path + " has no top-level \"implications\" array");
  std::vector<ImplicationRecord> out;
  std::set<std::int64_t> seen;
  for (const json& rec : doc["implications"]) {
    ImplicationRecord imp;
    imp.implication_id = int_field(rec, "implication_id");
    imp.source_question_id = int_field(rec, "source_question_id");
    imp.image_id = int_field(rec, "image_id");
    imp.itype = string_field(rec, "itype");
    imp.question = string_field(rec, "question");
    imp.answer = string_field(rec, "answer");
    if (imp.itype != "logeq" && imp.itype != "nec" && imp.itype != "mutex")
      throw Error(ErrorCode::MalformedJson,
                  "InvalidEnum: itype \"" + imp.itype + "\"");
    if (imp.answer != "yes" && imp.answer != "no")
      throw Error(ErrorCode::MalformedJson,
                  "InvalidEnum: answer \"" + imp.answer + "\"");
    if (!seen.insert(imp.implication_id).second)
      throw Error(ErrorCode::DuplicateId,
                  "implication_id " + std::to_string(imp.implication_id));
    out.push_back(std::move(imp));
  }
  return out;
}

RephrasingFile read_rephrasings(const std::string& path) {
  const json doc = load_json(path);
  RephrasingFile out;
  if (doc.is_object() && doc.contains("groups") && doc["groups"].is_array()) {
    for (const json& grp : doc["groups"]) {
      RephrasingGroup group;
      group.original_question_id = int_field(grp, "original_question_id");
      const json& rephs = field(grp, "rephrasings");
      if (!rephs.is_array() || rephs.empty())
        throw Error(ErrorCode::MalformedJson,
                    "empty rephrasing group for question " +
                        std::to_string(group.original_question_id));
      for (const json& rec : rephs) {
        QAPair qa;
        qa.question_id = int_field(rec, "question_id");
        qa.question = string_field(rec, "question");
        if (rec.contains("image_id")) qa.image_id = int_field(rec, "image_id");
        group.rephrasing_ids.push_back(qa.question_id);
        out.questions.push_back(std::move(qa));
      }
      out.groups.push_back(std::move(group));
    }
    return out;
  }
  if (doc.is_object() && doc.contains("questions") &&
      doc["questions"].is_array()) {
    // Flat layout: every question carries a "rephrasing_of" field.
    std::map<std::int64_t, std::size_t> group_index;
    for (const json& rec : doc["questions"]) {
      QAPair qa;
      qa.question_id = int_field(rec, "question_id");
      qa.question = string_field(rec, "question");
      if (rec.contains("image_id")) qa.image_id = int_field(rec, "image_id");
      const std::int64_t original = int_field(rec, "rephrasing_of");
      auto [it, inserted] = group_index.emplace(original, out.groups.size());
      if (inserted) {
        RephrasingGroup group;
        group.original_question_id = original;
        out.groups.push_back(std::move(group));
      }
      out.groups[it->second].rephrasing_ids.push_back(qa.question_id);
      out.questions.push_back(std::move(qa));
    }
    return out;
  }
  throw Error(ErrorCode::MalformedJson,
              path + " has neither \"groups\" nor \"questions\"");
}

std::vector<AttentionMap> read_attention_maps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<AttentionMap> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded())
      throw Error(ErrorCode::MalformedJson,
                  path + ":" + std::to_string(lineno));
    AttentionMap map;
    map.question_id = int_field(rec, "question_id");
    const json& weights = field(rec, "weights");
    if (!weights.is_array())
      throw Error(ErrorCode::MalformedJson, "weights is not an array");
    for (const json& w : weights) {
      if (!w.is_number())
        throw Error(ErrorCode::MalformedJson, "non-numeric weight");
      const double value = w.get<double>();
      if (!std::isfinite(value))
        throw Error(ErrorCode::NonFiniteWeight,
                    "question " + std::to_string(map.question_id));
      map.weights.push_back(value);
    }
    out.push_back(std::move(map));
  }
  return out;
}

}  // namespace vqi
