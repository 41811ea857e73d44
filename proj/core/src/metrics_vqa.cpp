#include "vqi/metrics_vqa.hpp"

#include <algorithm>
#include <cmath>

#include "vqi/dataset.hpp"
#include "vqi/error.hpp"
#include "vqi/text.hpp"

namespace vqi {

namespace {

std::string normalized_or_empty(const std::string& s) {
  try {
    return join(normalize(s));
  } catch (const Error&) {
    return std::string();
  }
}

// min(matches/3, 1) averaged over the 10 leave-one-annotator-out subsets.
double ten_answer_accuracy(const std::string& predicted,
                           const std::vector<std::string>& human_answers) {
  const std::string p = normalized_or_empty(predicted);
  std::vector<bool> match(human_answers.size());
  for (std::size_t i = 0; i < human_answers.size(); ++i)
    match[i] = !p.empty() && normalized_or_empty(human_answers[i]) == p;
  double acc = 0.0;
  for (std::size_t held_out = 0; held_out < match.size(); ++held_out) {
    int matches = 0;
    for (std::size_t i = 0; i < match.size(); ++i)
      if (i != held_out && match[i]) ++matches;
    acc += std::min(matches / 3.0, 1.0);
  }
  return acc / static_cast<double>(match.size());
}

bool original_correct(const PredictionSet& pred, const GroundTruth& gt,
                      std::int64_t qid, ErrorCode missing_code) {
  auto pit = pred.answers.find(qid);
  if (pit == pred.answers.end())
    throw Error(missing_code, "no prediction for question " + std::to_string(qid));
  auto git = gt.entries.find(qid);
  if (git == gt.entries.end())
    throw Error(missing_code, "no ground truth for question " + std::to_string(qid));
  return answers_match(pit->second, git->second.answer);
}

}  // namespace

bool answers_match(const std::string& predicted, const std::string& reference) {
  const std::string p = normalized_or_empty(predicted);
  return !p.empty() && p == normalized_or_empty(reference);
}

double vqa_accuracy(const PredictionSet& pred, const GroundTruth& gt) {
  if (pred.answers.empty())
    throw Error(ErrorCode::EmptyCorpus, "no predictions to score");
  double total = 0.0;
  for (const auto& [qid, answer] : pred.answers) {
    auto it = gt.entries.find(qid);
    if (it == gt.entries.end())
      throw Error(ErrorCode::MissingGroundTruth,
                  "question " + std::to_string(qid));
    const GroundTruth::Entry& entry = it->second;
    if (entry.human_answers)
      total += ten_answer_accuracy(answer, *entry.human_answers);
    else
      total += answers_match(answer, entry.answer) ? 1.0 : 0.0;
  }
  return total / static_cast<double>(pred.answers.size());
}

ConsistencyReport consistency(const PredictionSet& orig_pred,
                              const PredictionSet& imp_pred,
                              const GroundTruth& orig_gt,
                              const std::vector<ImplicationRecord>& implications) {
  ConsistencyReport report;
  report.per_type["logeq"];
  report.per_type["nec"];
  report.per_type["mutex"];

  std::map<std::int64_t, bool> orig_correct_cache;
  for (const ImplicationRecord& imp : implications) {
    auto [it, inserted] = orig_correct_cache.try_emplace(
        imp.source_question_id, false);
    if (inserted)
      it->second = original_correct(orig_pred, orig_gt, imp.source_question_id,
                                    ErrorCode::DanglingImplication);
    if (!it->second) continue;  // conditioning: skip incorrect originals

    auto pit = imp_pred.answers.find(imp.implication_id);
    if (pit == imp_pred.answers.end())
      throw Error(ErrorCode::DanglingImplication,
                  "no prediction for implication " +
                      std::to_string(imp.implication_id));
    const bool correct = answers_match(pit->second, imp.answer);
    RateBucket& bucket = report.per_type[imp.itype];
    ++bucket.total;
    ++report.overall.total;
    if (correct) {
      ++bucket.correct;
      ++report.overall.correct;
    }
  }
  for (const auto& [qid, correct] : orig_correct_cache)
    if (correct) ++report.originals_correct;
  return report;
}

std::optional<double> robustness(const PredictionSet& orig_pred,
                                 const PredictionSet& reph_pred,
                                 const GroundTruth& gt,
                                 const std::vector<RephrasingGroup>& groups) {
  PredictionSet conditioned;
  GroundTruth conditioned_gt;
  for (const RephrasingGroup& group : groups) {
    if (!original_correct(orig_pred, gt, group.original_question_id,
                          ErrorCode::MissingGroundTruth))
      continue;
    const GroundTruth::Entry& orig_entry =
        gt.entries.at(group.original_question_id);
    for (std::int64_t rid : group.rephrasing_ids) {
      auto pit = reph_pred.answers.find(rid);
      if (pit == reph_pred.answers.end())
        throw Error(ErrorCode::MissingGroundTruth,
                    "no prediction for rephrasing " + std::to_string(rid));
      conditioned.answers[rid] = pit->second;
      // Rephrasings keep the original answer; a dedicated gt entry wins.
      auto git = gt.entries.find(rid);
      conditioned_gt.entries[rid] =
          git != gt.entries.end() ? git->second : orig_entry;
    }
  }
  if (conditioned.answers.empty()) return std::nullopt;
  return vqa_accuracy(conditioned, conditioned_gt);
}

double attention_distance(
    const std::vector<AttentionMap>& maps_a,
    const std::vector<AttentionMap>& maps_b,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairing) {
  if (pairing.empty())
    throw Error(ErrorCode::EmptyCorpus, "no attention map pairs");
  auto find = [](const std::vector<AttentionMap>& maps, std::int64_t id)
      -> const AttentionMap& {
    for (const AttentionMap& m : maps)
      if (m.question_id == id) return m;
    throw Error(ErrorCode::MissingGroundTruth,
                "no attention map for question " + std::to_string(id));
  };
  double total = 0.0;
  for (const auto& [id_a, id_b] : pairing) {
    const AttentionMap& a = find(maps_a, id_a);
    const AttentionMap& b = find(maps_b, id_b);
    if (a.weights.size() != b.weights.size())
      throw Error(ErrorCode::LengthMismatch,
                  "attention maps " + std::to_string(id_a) + " and " +
                      std::to_string(id_b) + " differ in length");
    double sq = 0.0;
    for (std::size_t i = 0; i < a.weights.size(); ++i) {
      if (!std::isfinite(a.weights[i]) || !std::isfinite(b.weights[i]))
        throw Error(ErrorCode::NonFiniteWeight,
                    "non-finite attention weight in pair " +
                        std::to_string(id_a));
      const double d = a.weights[i] - b.weights[i];
      sq += d * d;
    }
    total += std::sqrt(sq);
  }
  return total / static_cast<double>(pairing.size());
}

}  // namespace vqi
