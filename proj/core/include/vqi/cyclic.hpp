#ifndef VQI_CYCLIC_HPP
#define VQI_CYCLIC_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vqi/implication.hpp"
#include "vqi/metrics_vqa.hpp"
#include "vqi/text.hpp"

namespace vqi {

struct QAPair;

struct LossWeights {
  double lambda_q = 0.5;
  double lambda_imp = 1.5;
};

struct CyclicConfig {
  double t_sim = 0.9;
  std::uint64_t a_iter = 5500;
  LossWeights weights;
};

struct CyclicStepTrace {
  std::uint64_t iteration = 0;
  double l_vqa = 0.0;
  double l_q = 0.0;
  double l_imp = 0.0;
  double l_total = 0.0;
  bool gate_open = false;
  bool cycle_active = false;
  std::optional<SkipReason> skipped_reason;  // generation failed for knob
  std::string predicted_answer;
  std::string implied_target;  // "yes" | "no" when generated
  std::string generated_surface;
};

struct ImageRef {
  std::int64_t image_id = 0;
};

class Answerer {
 public:
  virtual ~Answerer() = default;
  virtual AnswerScores answer(const TokenSeq& question,
                              const ImageRef& image) const = 0;
};

// Mean over vocabulary of -[t ln p + (1-t) ln(1-p)], predictions clamped
// to [1e-7, 1 - 1e-7]. Vocabularies must carry identical keys.
double bce_loss(const AnswerScores& pred, const AnswerScores& target);

// Mean over positions of -ln p(target token). Distributions must sum to
// 1 +- 1e-6 and match the target length.
double nll_loss(const std::vector<std::vector<double>>& token_distributions,
                const TokenSeq& target_tokens,
                const std::map<std::string, std::size_t>& vocab);

// L_vqa + lambda_q * L_q + lambda_imp * L_imp when the cycle is active;
// the L_imp term is zeroed behind a closed gate; L_vqa alone when the
// cycle is inactive.
double total_loss(double l_vqa, double l_q, double l_imp,
                  const LossWeights& w, bool gate_open, bool cycle_active);

// Open iff cosine similarity of the bag-of-words vectors >= t_sim.
bool gate(const TokenSeq& generated, const TokenSeq& ground_truth_imp,
          double t_sim);

// Cycle active iff iteration >= a_iter.
bool late_activation(std::uint64_t iteration, std::uint64_t a_iter);

// One cyclic pass: answer Q, generate the implication from the predicted
// answer, gate it against the ground-truth implication, answer the
// implication, assemble the three losses.
CyclicStepTrace cyclic_step(const Answerer& answerer, const QAPair& qa,
                            ImplicationType knob, const CyclicConfig& cfg,
                            std::uint64_t iteration);

// Deterministic linear scorer over hashed bag-of-words features with a
// sigmoid per vocabulary entry.
class ToyAnswerer : public Answerer {
 public:
  static constexpr std::size_t kFeatureDim = 16;

  ToyAnswerer(std::vector<std::string> vocabulary, unsigned seed);

  AnswerScores answer(const TokenSeq& question,
                      const ImageRef& image) const override;

  const std::vector<std::string>& vocabulary() const { return vocab_; }
  std::vector<double>& parameters() { return weights_; }
  const std::vector<double>& parameters() const { return weights_; }

  // Hashed bag-of-words feature vector for a question.
  std::vector<double> features(const TokenSeq& question) const;

 private:
  std::vector<std::string> vocab_;
  std::vector<double> weights_;  // vocab x kFeatureDim, row-major
};

// Analytic gradient of the batch-mean L_tot w.r.t. the toy parameters vs
// central finite differences (h = 1e-5); returns the max relative error.
double toy_gradient_check(ToyAnswerer& answerer,
                          const std::vector<QAPair>& batch,
                          ImplicationType knob, const CyclicConfig& cfg,
                          std::uint64_t iteration);

}  // namespace vqi

#endif  // VQI_CYCLIC_HPP
