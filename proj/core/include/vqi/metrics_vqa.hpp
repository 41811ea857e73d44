#ifndef VQI_METRICS_VQA_HPP
#define VQI_METRICS_VQA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vqi {

struct ImplicationRecord;
struct RephrasingGroup;

// A model's confidence over the answer vocabulary.
struct AnswerScores {
  std::map<std::string, double> scores;
};

struct PredictionSet {
  std::map<std::int64_t, std::string> answers;
  std::map<std::int64_t, AnswerScores> scores;  // optional, may be empty
};

struct GroundTruth {
  struct Entry {
    std::string answer;
    std::optional<std::vector<std::string>> human_answers;  // exactly 10
    std::int64_t image_id = 0;
  };
  std::map<std::int64_t, Entry> entries;
};

struct RateBucket {
  std::size_t correct = 0;
  std::size_t total = 0;
  // Absent when total == 0: "no data", not "fully inconsistent".
  std::optional<double> rate() const {
    if (total == 0) return std::nullopt;
    return static_cast<double>(correct) / static_cast<double>(total);
  }
};

struct ConsistencyReport {
  std::map<std::string, RateBucket> per_type;  // keys logeq/nec/mutex
  RateBucket overall;
  std::size_t originals_correct = 0;
};

struct AttentionMap {
  std::int64_t question_id = 0;
  std::vector<double> weights;
};

// True when prediction and reference agree after normalization.
bool answers_match(const std::string& predicted, const std::string& reference);

// Standard VQA v2.0 accuracy: with 10 human answers, the mean over the 10
// leave-one-annotator-out subsets of min(matches/3, 1); otherwise exact
// match on the canonical answer. Mean over predicted questions.
double vqa_accuracy(const PredictionSet& pred, const GroundTruth& gt);

// Fraction of implications answered correctly, restricted to implications
// whose source question was answered correctly.
ConsistencyReport consistency(const PredictionSet& orig_pred,
                              const PredictionSet& imp_pred,
                              const GroundTruth& orig_gt,
                              const std::vector<ImplicationRecord>& implications);

// VQA accuracy on rephrasings whose original was answered correctly.
// Absent when no original is correct.
std::optional<double> robustness(const PredictionSet& orig_pred,
                                 const PredictionSet& reph_pred,
                                 const GroundTruth& gt,
                                 const std::vector<RephrasingGroup>& groups);

// Mean Euclidean distance over paired attention maps.
double attention_distance(
    const std::vector<AttentionMap>& maps_a,
    const std::vector<AttentionMap>& maps_b,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairing);

}  // namespace vqi

#endif  // VQI_METRICS_VQA_HPP
