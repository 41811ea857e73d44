#include "vqi/metrics_vqa.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "vqi/dataset.hpp"
#include "vqi/error.hpp"
#include "vqi/implication.hpp"
#include "vqi/question.hpp"
#include "vqi/text.hpp"

using namespace vqi;

namespace {

GroundTruth::Entry entry_with_humans(const std::string& canonical,
                                     int matching, const std::string& match,
                                     const std::string& other) {
  GroundTruth::Entry e;
  e.answer = canonical;
  std::vector<std::string> humans;
  for (int i = 0; i < 10; ++i)
    humans.push_back(i < matching ? match : other);
  e.human_answers = humans;
  return e;
}

}  // namespace

TEST_CASE("vqa accuracy with 10 human answers") {
  PredictionSet pred;
  pred.answers[1] = "red";
  GroundTruth gt;

  gt.entries[1] = entry_with_humans("red", 10, "red", "blue");
  CHECK(vqa_accuracy(pred, gt) == doctest::Approx(1.0).epsilon(1e-12));

  gt.entries[1] = entry_with_humans("blue", 1, "red", "blue");
  CHECK(vqa_accuracy(pred, gt) == doctest::Approx(0.3).epsilon(1e-12));

  gt.entries[1] = entry_with_humans("blue", 0, "red", "blue");
  CHECK(vqa_accuracy(pred, gt) == 0.0);

  // 3 matches saturate min(matches/3, 1) except where one is held out
  gt.entries[1] = entry_with_humans("blue", 3, "red", "blue");
  CHECK(vqa_accuracy(pred, gt) ==
        doctest::Approx((7 * 1.0 + 3 * (2 / 3.0)) / 10).epsilon(1e-12));
}

TEST_CASE("vqa accuracy canonical fallback and errors") {
  PredictionSet pred;
  pred.answers[1] = "Red";
  GroundTruth gt;
  gt.entries[1].answer = "red";
  CHECK(vqa_accuracy(pred, gt) == 1.0);  // normalized match

  pred.answers[2] = "dog";
  try {
    vqa_accuracy(pred, gt);
    FAIL("expected MissingGroundTruth");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingGroundTruth);
  }
}

namespace {

struct Fixture {
  PredictionSet orig_pred, imp_pred;
  GroundTruth gt;
  std::vector<ImplicationRecord> implications;
};

// 4 originals answered correctly, 1 incorrectly; 12 implications on the
// correct ones with 9 answered right, plus implications on the incorrect
// original that must be excluded.
Fixture hand_fixture() {
  Fixture f;
  const char* types[] = {"logeq", "nec", "mutex"};
  for (int q = 1; q <= 5; ++q) {
    f.gt.entries[q].answer = "3";
    f.orig_pred.answers[q] = q <= 4 ? "3" : "4";  // q=5 wrong
    for (int t = 0; t < 3; ++t) {
      ImplicationRecord rec;
      rec.source_question_id = q;
      rec.itype = types[t];
      rec.implication_id = q * 10 + t + 1;
      rec.answer = t == 2 ? "no" : "yes";
      f.implications.push_back(rec);
    }
  }
  // q=1..3: all 3 right; q=4: none right (9 of 12); q=5 excluded anyway
  for (const ImplicationRecord& rec : f.implications) {
    const bool right = rec.source_question_id <= 3;
    f.imp_pred.answers[rec.implication_id] =
        right ? rec.answer : (rec.answer == "yes" ? "no" : "yes");
  }
  return f;
}

}  // namespace

TEST_CASE("consistency conditions on correct originals") {
  const Fixture f = hand_fixture();
  const ConsistencyReport report =
      consistency(f.orig_pred, f.imp_pred, f.gt, f.implications);
  CHECK(report.overall.total == 12);
  CHECK(report.overall.correct == 9);
  CHECK(*report.overall.rate() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(report.originals_correct == 4);
  CHECK(report.per_type.at("logeq").total == 4);
  CHECK(report.per_type.at("logeq").correct == 3);
}

TEST_CASE("consistency of all-correct implication answers is 1") {
  Fixture f = hand_fixture();
  for (const ImplicationRecord& rec : f.implications)
    f.imp_pred.answers[rec.implication_id] = rec.answer;
  const ConsistencyReport report =
      consistency(f.orig_pred, f.imp_pred, f.gt, f.implications);
  CHECK(*report.overall.rate() == 1.0);
  for (const char* t : {"logeq", "nec", "mutex"})
    CHECK(*report.per_type.at(t).rate() == 1.0);
}

TEST_CASE("consistency empty denominator is absent, not zero") {
  Fixture f = hand_fixture();
  for (auto& [qid, answer] : f.orig_pred.answers) answer = "wrong";
  const ConsistencyReport report =
      consistency(f.orig_pred, f.imp_pred, f.gt, f.implications);
  CHECK(!report.overall.rate());
  CHECK(report.overall.total == 0);
}

TEST_CASE("consistency rejects dangling implications") {
  Fixture f = hand_fixture();
  f.imp_pred.answers.erase(11);
  try {
    consistency(f.orig_pred, f.imp_pred, f.gt, f.implications);
    FAIL("expected DanglingImplication");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DanglingImplication);
  }
}

TEST_CASE("consistency is invariant to implication ordering") {
  Fixture f = hand_fixture();
  std::vector<ImplicationRecord> reversed(f.implications.rbegin(),
                                          f.implications.rend());
  const auto a = consistency(f.orig_pred, f.imp_pred, f.gt, f.implications);
  const auto b = consistency(f.orig_pred, f.imp_pred, f.gt, reversed);
  CHECK(a.overall.correct == b.overall.correct);
  CHECK(a.overall.total == b.overall.total);
  CHECK(a.per_type.at("mutex").correct == b.per_type.at("mutex").correct);
}

TEST_CASE("random yes/no answerer sits near 0.5 consistency") {
  PredictionSet orig_pred, imp_pred;
  GroundTruth gt;
  std::vector<ImplicationRecord> implications;
  std::mt19937 rng(1234);
  std::bernoulli_distribution coin(0.5);
  const char* types[] = {"logeq", "nec", "mutex"};
  for (int q = 1; q <= 10000; ++q) {
    gt.entries[q].answer = "2";
    orig_pred.answers[q] = "2";
    const char* t = types[q % 3];
    ImplicationRecord rec;
    rec.source_question_id = q;
    rec.itype = t;
    rec.implication_id = q * 10 + 1;
    rec.answer = rec.itype == "mutex" ? "no" : "yes";
    imp_pred.answers[rec.implication_id] = coin(rng) ? "yes" : "no";
    implications.push_back(rec);
  }
  const ConsistencyReport report =
      consistency(orig_pred, imp_pred, gt, implications);
  CHECK(report.overall.total == 10000);
  CHECK(*report.overall.rate() == doctest::Approx(0.5).epsilon(0.04));
  CHECK(std::abs(*report.overall.rate() - 0.5) < 0.02);
}

TEST_CASE("robustness conditions on correct originals") {
  PredictionSet orig_pred, reph_pred;
  GroundTruth gt;
  std::vector<RephrasingGroup> groups;
  for (int q = 1; q <= 4; ++q) {
    gt.entries[q].answer = "cat";
    orig_pred.answers[q] = q <= 3 ? "cat" : "dog";  // q=4 wrong
    RephrasingGroup group;
    group.original_question_id = q;
    for (int r = 0; r < 3; ++r) {
      const std::int64_t rid = q * 100 + r;
      group.rephrasing_ids.push_back(rid);
      reph_pred.answers[rid] = r < 2 ? "cat" : "dog";  // 2 of 3 right
    }
    groups.push_back(group);
  }
  const auto score = robustness(orig_pred, reph_pred, gt, groups);
  REQUIRE(score.has_value());
  CHECK(*score == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // all rephrasings right
  for (auto& [rid, ans] : reph_pred.answers) ans = "cat";
  CHECK(*robustness(orig_pred, reph_pred, gt, groups) == 1.0);

  // no original correct: absent, not zero
  for (auto& [qid, ans] : orig_pred.answers) ans = "dog";
  CHECK(!robustness(orig_pred, reph_pred, gt, groups));
}

TEST_CASE("attention distance") {
  std::vector<AttentionMap> a = {{1, {1.0, 0.0}}, {2, {0.5, 0.5}}};
  std::vector<AttentionMap> b = {{1, {0.0, 1.0}}, {2, {0.5, 0.5}}};
  const std::vector<std::pair<std::int64_t, std::int64_t>> both = {{1, 1},
                                                                   {2, 2}};
  const std::vector<std::pair<std::int64_t, std::int64_t>> one = {{1, 1}};

  CHECK(attention_distance(a, a, both) == 0.0);
  CHECK(attention_distance(a, b, one) ==
        doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(attention_distance(a, b, both) ==
        doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(attention_distance(a, b, both) == attention_distance(b, a, both));

  std::vector<AttentionMap> bad = {{1, {1.0, 0.0, 0.0}}};
  try {
    attention_distance(a, bad, one);
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
}
