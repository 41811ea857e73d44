#include "vqi/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vqi/dataset.hpp"
#include "vqi/error.hpp"

namespace vqi {

namespace {

constexpr double kClampEps = 1e-7;

double clamp_prob(double p) {
  return std::clamp(p, kClampEps, 1.0 - kClampEps);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string top_answer(const AnswerScores& scores) {
  std::string best;
  double best_score = -1.0;
  for (const auto& [answer, score] : scores.scores) {
    if (score > best_score) {  // map order breaks ties lexicographically
      best_score = score;
      best = answer;
    }
  }
  return best;
}

AnswerScores one_hot_like(const AnswerScores& shape, const std::string& answer) {
  AnswerScores target;
  for (const auto& [entry, score] : shape.scores)
    target.scores[entry] = entry == answer ? 1.0 : 0.0;
  return target;
}

// Synthetic token distributions standing in for a generator's output:
// 0.9 on the generated token at each position, the rest spread uniformly.
double synthetic_question_loss(const TokenSeq& generated,
                               const TokenSeq& ground_truth) {
  std::map<std::string, std::size_t> vocab;
  for (const auto& t : ground_truth.tokens) vocab.emplace(t, vocab.size());
  for (const auto& t : generated.tokens) vocab.emplace(t, vocab.size());

  std::vector<std::vector<double>> dists;
  dists.reserve(ground_truth.size());
  for (std::size_t i = 0; i < ground_truth.size(); ++i) {
    const std::string& anchor =
        i < generated.size() ? generated.tokens[i] : ground_truth.tokens[i];
    std::vector<double> dist(vocab.size(), 0.0);
    if (vocab.size() == 1) {
      dist[0] = 1.0;
    } else {
      const double rest = 0.1 / static_cast<double>(vocab.size() - 1);
      for (auto& p : dist) p = rest;
      dist[vocab.at(anchor)] = 0.9;
    }
    dists.push_back(std::move(dist));
  }
  return nll_loss(dists, ground_truth, vocab);
}

struct StepDetail {
  CyclicStepTrace trace;
  TokenSeq q_tokens;
  AnswerScores p_q, t_q;
  bool has_imp = false;
  TokenSeq imp_tokens;
  AnswerScores p_imp, t_imp;
};

StepDetail run_step(const Answerer& answerer, const QAPair& qa,
                    ImplicationType knob, const CyclicConfig& cfg,
                    std::uint64_t iteration) {
  StepDetail d;
  d.trace.iteration = iteration;
  d.q_tokens = normalize(qa.question);
  const ImageRef image{qa.image_id};

  d.p_q = answerer.answer(d.q_tokens, image);
  d.t_q = one_hot_like(d.p_q, qa.answer);
  d.trace.predicted_answer = top_answer(d.p_q);
  d.trace.l_vqa = bce_loss(d.p_q, d.t_q);

  const ParsedQuestion pq = classify(d.q_tokens);
  const auto generated = generate(pq, d.trace.predicted_answer, knob);
  const auto ground_truth = generate(pq, qa.answer, knob);

  if (!generated || !ground_truth) {
    // Not generable for this knob: record why, keep the cycle inactive.
    d.trace.skipped_reason = generate_all(pq, qa.answer).skipped_reason;
    if (!d.trace.skipped_reason)
      d.trace.skipped_reason = SkipReason::UnsupportedKind;
    d.trace.cycle_active = false;
    d.trace.gate_open = false;
    d.trace.l_total =
        total_loss(d.trace.l_vqa, 0.0, 0.0, cfg.weights, false, false);
    return d;
  }

  d.has_imp = true;
  d.imp_tokens = generated->question;
  d.trace.generated_surface = generated->surface;
  d.trace.implied_target = ground_truth->answer;
  d.trace.gate_open =
      gate(generated->question, ground_truth->question, cfg.t_sim);
  d.trace.cycle_active = late_activation(iteration, cfg.a_iter);

  d.trace.l_q =
      synthetic_question_loss(generated->question, ground_truth->question);
  d.p_imp = answerer.answer(generated->question, image);
  d.t_imp = one_hot_like(d.p_imp, ground_truth->answer);
  d.trace.l_imp = bce_loss(d.p_imp, d.t_imp);
  d.trace.l_total =
      total_loss(d.trace.l_vqa, d.trace.l_q, d.trace.l_imp, cfg.weights,
                 d.trace.gate_open, d.trace.cycle_active);
  return d;
}

}  // namespace

double bce_loss(const AnswerScores& pred, const AnswerScores& target) {
  if (pred.scores.size() != target.scores.size())
    throw Error(ErrorCode::VocabMismatch, "vocabulary sizes differ");
  if (pred.scores.empty())
    throw Error(ErrorCode::EmptyVector, "empty answer vocabulary");
  double total = 0.0;
  auto tit = target.scores.begin();
  for (auto pit = pred.scores.begin(); pit != pred.scores.end(); ++pit, ++tit) {
    if (pit->first != tit->first)
      throw Error(ErrorCode::VocabMismatch,
                  "vocabulary entry mismatch at " + pit->first);
    const double p = clamp_prob(pit->second);
    const double t = tit->second;
    total -= t * std::log(p) + (1.0 - t) * std::log(1.0 - p);
  }
  return total / static_cast<double>(pred.scores.size());
}

double nll_loss(const std::vector<std::vector<double>>& token_distributions,
                const TokenSeq& target_tokens,
                const std::map<std::string, std::size_t>& vocab) {
  if (token_distributions.size() != target_tokens.size())
    throw Error(ErrorCode::LengthMismatch,
                "distribution count differs from target length");
  if (token_distributions.empty())
    throw Error(ErrorCode::LengthMismatch, "empty target sequence");
  double total = 0.0;
  for (std::size_t i = 0; i < token_distributions.size(); ++i) {
    const auto& dist = token_distributions[i];
    double sum = 0.0;
    for (double p : dist) sum += p;
    if (std::abs(sum - 1.0) > 1e-6)
      throw Error(ErrorCode::InvalidInput,
                  "distribution at position " + std::to_string(i) +
                      " does not sum to 1");
    auto it = vocab.find(target_tokens.tokens[i]);
    if (it == vocab.end() || it->second >= dist.size())
      throw Error(ErrorCode::TokenOutOfVocab, target_tokens.tokens[i]);
    total -= std::log(std::max(dist[it->second], kClampEps));
  }
  return total / static_cast<double>(token_distributions.size());
}

double total_loss(double l_vqa, double l_q, double l_imp,
                  const LossWeights& w, bool gate_open, bool cycle_active) {
  if (!cycle_active) return l_vqa;
  double total = l_vqa + w.lambda_q * l_q;
  if (gate_open) total += w.lambda_imp * l_imp;
  return total;
}

bool gate(const TokenSeq& generated, const TokenSeq& ground_truth_imp,
          double t_sim) {
  if (generated.empty() || ground_truth_imp.empty())
    throw Error(ErrorCode::EmptyQuestion, "gate on an empty question");
  return cosine_similarity(bow(generated), bow(ground_truth_imp)) >= t_sim;
}

bool late_activation(std::uint64_t iteration, std::uint64_t a_iter) {
  return iteration >= a_iter;
}

CyclicStepTrace cyclic_step(const Answerer& answerer, const QAPair& qa,
                            ImplicationType knob, const CyclicConfig& cfg,
                            std::uint64_t iteration) {
  return run_step(answerer, qa, knob, cfg, iteration).trace;
}

ToyAnswerer::ToyAnswerer(std::vector<std::string> vocabulary, unsigned seed)
    : vocab_(std::move(vocabulary)) {
  // Canonical row order: weight row v must line up with the v-th entry of
  // the (map-ordered) score vectors, whatever order the caller passed.
  std::sort(vocab_.begin(), vocab_.end());
  vocab_.erase(std::unique(vocab_.begin(), vocab_.end()), vocab_.end());
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 0.25);
  weights_.resize(vocab_.size() * kFeatureDim);
  for (double& w : weights_) w = dist(rng);
}

std::vector<double> ToyAnswerer::features(const TokenSeq& question) const {
  std::vector<double> x(kFeatureDim, 0.0);
  for (const std::string& token : question.tokens)
    x[fnv1a(token) % kFeatureDim] += 1.0;
  return x;
}

AnswerScores ToyAnswerer::answer(const TokenSeq& question,
                                 const ImageRef& image) const {
  (void)image;  // opaque reference; the toy scorer is text-only
  const std::vector<double> x = features(question);
  AnswerScores scores;
  for (std::size_t v = 0; v < vocab_.size(); ++v) {
    double z = 0.0;
    for (std::size_t d = 0; d < kFeatureDim; ++d)
      z += weights_[v * kFeatureDim + d] * x[d];
    scores.scores[vocab_[v]] = 1.0 / (1.0 + std::exp(-z));
  }
  return scores;
}

double toy_gradient_check(ToyAnswerer& answerer,
                          const std::vector<QAPair>& batch,
                          ImplicationType knob, const CyclicConfig& cfg,
                          std::uint64_t iteration) {
  if (batch.empty())
    throw Error(ErrorCode::EmptyCorpus, "gradient check needs a batch");
  const std::size_t dim = ToyAnswerer::kFeatureDim;
  const std::vector<std::string>& vocab = answerer.vocabulary();
  const double batch_size = static_cast<double>(batch.size());
  const double vocab_size = static_cast<double>(vocab.size());

  // Analytic gradient of the batch-mean L_tot. L_q does not depend on the
  // answerer parameters; argmax and gate are treated as constants.
  std::vector<double> analytic(answerer.parameters().size(), 0.0);
  auto accumulate = [&](const TokenSeq& question, const AnswerScores& pred,
                        const AnswerScores& target, double weight) {
    const std::vector<double> x = answerer.features(question);
    std::size_t v = 0;
    auto tit = target.scores.begin();
    for (auto pit = pred.scores.begin(); pit != pred.scores.end();
         ++pit, ++tit, ++v) {
      const double p = pit->second;
      if (p <= kClampEps || p >= 1.0 - kClampEps) continue;  // clamped flat
      const double coeff = weight * (p - tit->second) / vocab_size / batch_size;
      for (std::size_t d = 0; d < dim; ++d)
        analytic[v * dim + d] += coeff * x[d];
    }
  };
  std::vector<StepDetail> details;
  details.reserve(batch.size());
  for (const QAPair& qa : batch)
    details.push_back(run_step(answerer, qa, knob, cfg, iteration));
  for (const StepDetail& d : details) {
    accumulate(d.q_tokens, d.p_q, d.t_q, 1.0);
    if (d.has_imp && d.trace.cycle_active && d.trace.gate_open)
      accumulate(d.imp_tokens, d.p_imp, d.t_imp, cfg.weights.lambda_imp);
  }

  // The loss is piecewise smooth: argmax, generation and the gate are
  // plateaus, so the check fixes the structure chosen at the base point and
  // differentiates the smooth answerer terms within that piece. Without
  // this, a perturbation that flips the predicted answer would compare the
  // finite difference against a derivative taken on a different piece.
  auto batch_loss = [&]() {
    double total = 0.0;
    for (const StepDetail& d : details) {
      const ImageRef image{};  // the toy scorer is text-only
      const AnswerScores p_q = answerer.answer(d.q_tokens, image);
      const double l_vqa = bce_loss(p_q, d.t_q);
      if (d.has_imp && d.trace.cycle_active) {
        double l_imp = 0.0;
        if (d.trace.gate_open)
          l_imp = bce_loss(answerer.answer(d.imp_tokens, image), d.t_imp);
        total += total_loss(l_vqa, d.trace.l_q, l_imp, cfg.weights,
                            d.trace.gate_open, true);
      } else {
        total += l_vqa;
      }
    }
    return total / batch_size;
  };

  constexpr double h = 1e-5;
  double max_rel = 0.0;
  std::vector<double>& params = answerer.parameters();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + h;
    const double up = batch_loss();
    params[i] = saved - h;
    const double down = batch_loss();
    params[i] = saved;
    const double fd = (up - down) / (2.0 * h);
    const double denom =
        std::max({1e-4, std::abs(fd), std::abs(analytic[i])});
    max_rel = std::max(max_rel, std::abs(fd - analytic[i]) / denom);
  }
  return max_rel;
}

}  // namespace vqi
