#include "vqi/dataset.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <unistd.h>

#include "doctest.h"
#include "vqi/error.hpp"

using namespace vqi;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("vqi_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) {
    const std::string p = (path / name).string();
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
  std::string file(const std::string& name) { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a vqi::Error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("read vqa questions") {
  TempDir dir;
  const std::string good = dir.file(
      "q.json",
      R"({"questions":[{"question_id":1,"image_id":10,"question":"How many dogs?"},)"
      R"({"question_id":2,"image_id":10,"question":"Is this a cat?"}]})");
  const auto qs = read_vqa_questions(good);
  REQUIRE(qs.size() == 2);
  CHECK(qs[0].question_id == 1);
  CHECK(qs[0].image_id == 10);
  CHECK(qs[0].question == "How many dogs?");
  CHECK(qs[1].question_id == 2);  // order preserved

  CHECK(code_of([&] {
          read_vqa_questions(dir.file("bad1.json", R"({"nope":[]})"));
        }) == ErrorCode::MalformedJson);
  CHECK(code_of([&] {
          read_vqa_questions(dir.file(
              "bad2.json",
              R"({"questions":[{"question_id":1,"image_id":1,"question":"a"},)"
              R"({"question_id":1,"image_id":1,"question":"b"}]})"));
        }) == ErrorCode::DuplicateId);
  CHECK(code_of([&] {
          read_vqa_questions(
              dir.file("bad3.json", R"({"questions":[{"image_id":1}]})"));
        }) == ErrorCode::MissingField);
  CHECK(code_of([&] { read_vqa_questions(dir.file("bad4.json", "{not json")); }) ==
        ErrorCode::MalformedJson);
  CHECK(code_of([&] { read_vqa_questions(dir.file("missing.json")); }) ==
        ErrorCode::IoError);
}

namespace {

std::string annotation_json(int answers) {
  std::string humans;
  for (int i = 0; i < answers; ++i) {
    if (i) humans += ",";
    humans += R"({"answer":"red"})";
  }
  return R"({"annotations":[{"question_id":1,"multiple_choice_answer":"red",)"
         R"("answers":[)" + humans + "]}]}";
}

}  // namespace

TEST_CASE("read vqa annotations") {
  TempDir dir;
  const auto anns = read_vqa_annotations(dir.file("a.json", annotation_json(10)));
  REQUIRE(anns.size() == 1);
  CHECK(anns.at(1).answer == "red");
  CHECK(anns.at(1).human_answers.size() == 10);

  CHECK(code_of([&] {
          read_vqa_annotations(dir.file("a9.json", annotation_json(9)));
        }) == ErrorCode::AnswerCountNot10);

  // merge: unknown question_id is a dangling annotation
  std::vector<QAPair> questions;
  QAPair qa;
  qa.question_id = 2;
  questions.push_back(qa);
  CHECK(code_of([&] { merge_annotations(questions, anns); }) ==
        ErrorCode::DanglingAnnotation);

  questions[0].question_id = 1;
  merge_annotations(questions, anns);
  CHECK(questions[0].answer == "red");
  REQUIRE(questions[0].human_answers.has_value());
}

TEST_CASE("read predictions") {
  TempDir dir;
  CHECK(read_predictions(dir.file("p0.json", "[]")).answers.empty());
  const auto preds = read_predictions(dir.file(
      "p.json",
      R"([{"question_id":1,"answer":"yes"},{"question_id":2,"answer":"no"}])"));
  CHECK(preds.answers.size() == 2);
  CHECK(preds.answers.at(2) == "no");
  CHECK(code_of([&] {
          read_predictions(dir.file(
              "pd.json",
              R"([{"question_id":1,"answer":"a"},{"question_id":1,"answer":"b"}])"));
        }) == ErrorCode::DuplicateId);
}

TEST_CASE("implication round trip is byte stable") {
  TempDir dir;
  std::vector<ImplicationRecord> records;
  const char* types[] = {"logeq", "nec", "mutex"};
  const char* questions[] = {"Are there 4 people?", "Are there any people?",
                             "Are there 5 people?"};
  const char* answers[] = {"yes", "yes", "no"};
  for (int i = 0; i < 3; ++i) {
    ImplicationRecord rec;
    rec.itype = types[i];
    rec.implication_id = implication_id_for(77, rec.itype);
    rec.source_question_id = 77;
    rec.image_id = 5;
    rec.question = questions[i];
    rec.answer = answers[i];
    records.push_back(rec);
  }
  const std::string p1 = dir.file("imp1.json");
  write_implications(records, p1);
  const auto back = read_implications(p1);
  REQUIRE(back.size() == 3);
  CHECK(back[0].implication_id == 771);
  CHECK(back[1].implication_id == 772);
  CHECK(back[2].implication_id == 773);
  CHECK(back[2].answer == "no");

  const std::string p2 = dir.file("imp2.json");
  write_implications(back, p2);
  CHECK(slurp(p1) == slurp(p2));  // write∘read∘write identity

  // fixed key order in the serialized form
  const std::string text = slurp(p1);
  CHECK(text.find("implication_id") < text.find("source_question_id"));
  CHECK(text.find("source_question_id") < text.find("image_id"));
  CHECK(text.find("\"itype\"") < text.find("\"question\""));
  CHECK(text.find("\"question\"") < text.find("\"answer\""));
}

TEST_CASE("implication reader rejects bad enums") {
  TempDir dir;
  CHECK(code_of([&] {
          read_implications(dir.file(
              "bad.json",
              R"({"implications":[{"implication_id":1,"source_question_id":0,)"
              R"("image_id":0,"itype":"logicaleq","question":"q","answer":"yes"}]})"));
        }) == ErrorCode::MalformedJson);
  CHECK(code_of([&] {
          read_implications(dir.file(
              "bad2.json",
              R"({"implications":[{"implication_id":1,"source_question_id":0,)"
              R"("image_id":0,"itype":"nec","question":"q","answer":"maybe"}]})"));
        }) == ErrorCode::MalformedJson);
}

TEST_CASE("read rephrasings in both layouts") {
  TempDir dir;
  const auto grouped = read_rephrasings(dir.file(
      "g.json",
      R"({"groups":[{"original_question_id":1,"rephrasings":[)"
      R"({"question_id":101,"question":"How many dogs can you see?"},)"
      R"({"question_id":102,"question":"What is the number of dogs?"},)"
      R"({"question_id":103,"question":"How many dogs do you see?"}]}]})"));
  REQUIRE(grouped.groups.size() == 1);
  CHECK(grouped.groups[0].rephrasing_ids ==
        std::vector<std::int64_t>{101, 102, 103});
  CHECK(grouped.questions.size() == 3);

  const auto flat = read_rephrasings(dir.file(
      "f.json",
      R"({"questions":[{"question_id":101,"question":"a","rephrasing_of":1},)"
      R"({"question_id":102,"question":"b","rephrasing_of":1},)"
      R"({"question_id":201,"question":"c","rephrasing_of":2}]})"));
  REQUIRE(flat.groups.size() == 2);
  CHECK(flat.groups[0].rephrasing_ids == std::vector<std::int64_t>{101, 102});
  CHECK(flat.groups[1].original_question_id == 2);

  CHECK(code_of([&] {
          read_rephrasings(dir.file(
              "empty.json",
              R"({"groups":[{"original_question_id":1,"rephrasings":[]}]})"));
        }) == ErrorCode::MalformedJson);
}

TEST_CASE("read attention maps") {
  TempDir dir;
  std::string lines;
  lines += R"({"question_id":1,"weights":[)";
  for (int i = 0; i < 36; ++i) {
    if (i) lines += ",";
    lines += "0.5";
  }
  lines += "]}\n";
  const auto maps = read_attention_maps(dir.file("m.jsonl", lines));
  REQUIRE(maps.size() == 1);
  CHECK(maps[0].weights.size() == 36);

  CHECK(read_attention_maps(dir.file("empty.jsonl", "")).empty());

  // Strict JSON cannot carry non-finite values, so an overflowing literal
  // is a parse failure; the NonFiniteWeight guard lives in the distance
  // computation over in-memory maps.
  CHECK(code_of([&] {
          read_attention_maps(dir.file(
              "nan.jsonl", R"({"question_id":1,"weights":[1e999]})"));
        }) == ErrorCode::MalformedJson);
  CHECK(code_of([&] {
          read_attention_maps(dir.file("bad.jsonl", "{broken"));
        }) == ErrorCode::MalformedJson);
}
