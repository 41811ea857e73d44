#include "vqi/metrics_nlg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

#include "vqi/error.hpp"
#include "vqi/porter.hpp"

namespace vqi {

namespace {

using NgramCounts = std::map<std::string, int>;

NgramCounts ngrams(const TokenSeq& seq, int n) {
  NgramCounts counts;
  if (static_cast<int>(seq.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key.push_back('\x1f');
      key += seq.tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

void require_nonempty(const ScoredCorpus& corpus) {
  if (corpus.pairs.empty())
    throw Error(ErrorCode::EmptyCorpus, "no candidate/reference pairs");
  for (const ScoredPair& pair : corpus.pairs)
    if (pair.references.empty())
      throw Error(ErrorCode::InvalidInput, "candidate without references");
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      if (a.tokens[i - 1] == b.tokens[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

struct MeteorScoreParts {
  int matches = 0;
  int chunks = 0;
};

// Exact matches first, then Porter-stem matches on the leftovers. Each
// stage scans candidate positions left to right and takes the leftmost
// unmatched reference position.
MeteorScoreParts meteor_align(const TokenSeq& cand, const TokenSeq& ref) {
  std::vector<int> align(cand.size(), -1);
  std::vector<bool> ref_used(ref.size(), false);

  auto run_stage = [&](auto key) {
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (align[i] != -1) continue;
      for (std::size_t j = 0; j < ref.size(); ++j) {
        if (ref_used[j]) continue;
        if (key(cand.tokens[i]) == key(ref.tokens[j])) {
          align[i] = static_cast<int>(j);
          ref_used[j] = true;
          break;
        }
      }
    }
  };
  run_stage([](const std::string& w) { return w; });
  run_stage([](const std::string& w) { return porter_stem(w); });

  MeteorScoreParts parts;
  int prev_ref = -2;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (align[i] == -1) continue;
    ++parts.matches;
    // A chunk continues only when both sides advance by exactly one.
    if (!(i > 0 && align[i] == prev_ref + 1 && align[i - 1] == prev_ref))
      ++parts.chunks;
    prev_ref = align[i];
  }
  return parts;
}

double meteor_pair(const TokenSeq& cand, const TokenSeq& ref) {
  if (cand.empty() || ref.empty()) return 0.0;
  const MeteorScoreParts parts = meteor_align(cand, ref);
  if (parts.matches == 0) return 0.0;
  const double m = parts.matches;
  const double precision = m / static_cast<double>(cand.size());
  const double recall = m / static_cast<double>(ref.size());
  const double f_mean = 10.0 * precision * recall / (recall + 9.0 * precision);
  const double frag = static_cast<double>(parts.chunks) / m;
  const double penalty = 0.5 * frag * frag * frag;
  return f_mean * (1.0 - penalty);
}

}  // namespace

double bleu(const ScoredCorpus& corpus, int n) {
  require_nonempty(corpus);
  if (n < 1 || n > 4)
    throw Error(ErrorCode::InvalidInput, "BLEU order must be 1..4");

  std::vector<long long> clipped(n, 0), totals(n, 0);
  long long cand_len = 0, ref_len = 0;
  for (const ScoredPair& pair : corpus.pairs) {
    cand_len += static_cast<long long>(pair.candidate.size());
    // Closest reference length; ties favor the shorter one.
    long long best = static_cast<long long>(pair.references[0].size());
    for (const TokenSeq& ref : pair.references) {
      const long long len = static_cast<long long>(ref.size());
      const long long c = static_cast<long long>(pair.candidate.size());
      if (std::llabs(len - c) < std::llabs(best - c) ||
          (std::llabs(len - c) == std::llabs(best - c) && len < best))
        best = len;
    }
    ref_len += best;

    for (int order = 1; order <= n; ++order) {
      const NgramCounts cand_counts = ngrams(pair.candidate, order);
      NgramCounts max_ref;
      for (const TokenSeq& ref : pair.references)
        for (const auto& [gram, count] : ngrams(ref, order))
          max_ref[gram] = std::max(max_ref[gram], count);
      for (const auto& [gram, count] : cand_counts) {
        totals[order - 1] += count;
        auto it = max_ref.find(gram);
        if (it != max_ref.end())
          clipped[order - 1] += std::min(count, it->second);
      }
    }
  }

  double log_precision = 0.0;
  for (int order = 1; order <= n; ++order) {
    if (totals[order - 1] == 0 || clipped[order - 1] == 0) return 0.0;
    log_precision += std::log(static_cast<double>(clipped[order - 1]) /
                              static_cast<double>(totals[order - 1]));
  }
  double score = std::exp(log_precision / n);
  if (cand_len < ref_len && cand_len > 0)
    score *= std::exp(1.0 - static_cast<double>(ref_len) /
                                static_cast<double>(cand_len));
  return score;
}

double rouge_l(const ScoredCorpus& corpus) {
  require_nonempty(corpus);
  constexpr double kBetaSq = 1.2 * 1.2;
  double total = 0.0;
  for (const ScoredPair& pair : corpus.pairs) {
    double best = 0.0;
    for (const TokenSeq& ref : pair.references) {
      if (pair.candidate.empty() || ref.empty()) continue;
      const double lcs = static_cast<double>(lcs_length(pair.candidate, ref));
      if (lcs == 0.0) continue;
      const double precision = lcs / static_cast<double>(pair.candidate.size());
      const double recall = lcs / static_cast<double>(ref.size());
      const double f = (1.0 + kBetaSq) * recall * precision /
                       (recall + kBetaSq * precision);
      best = std::max(best, f);
    }
    total += best;
  }
  return total / static_cast<double>(corpus.pairs.size());
}

double meteor(const ScoredCorpus& corpus) {
  require_nonempty(corpus);
  double total = 0.0;
  for (const ScoredPair& pair : corpus.pairs) {
    double best = 0.0;
    for (const TokenSeq& ref : pair.references)
      best = std::max(best, meteor_pair(pair.candidate, ref));
    total += best;
  }
  return total / static_cast<double>(corpus.pairs.size());
}

double cider(const ScoredCorpus& corpus) {
  require_nonempty(corpus);
  constexpr int kMaxOrder = 4;
  const double num_docs = static_cast<double>(corpus.pairs.size());

  // Document frequencies over reference sets.
  std::array<std::map<std::string, int>, kMaxOrder> df;
  for (const ScoredPair& pair : corpus.pairs) {
    for (int order = 1; order <= kMaxOrder; ++order) {
      std::set<std::string> seen;
      for (const TokenSeq& ref : pair.references)
        for (const auto& [gram, count] : ngrams(ref, order))
          seen.insert(gram);
      for (const std::string& gram : seen) ++df[order - 1][gram];
    }
  }

  auto tfidf = [&](const TokenSeq& seq, int order) {
    std::map<std::string, double> vec;
    for (const auto& [gram, count] : ngrams(seq, order)) {
      auto it = df[order - 1].find(gram);
      const double freq = it == df[order - 1].end()
                              ? 1.0
                              : static_cast<double>(it->second);
      vec[gram] = static_cast<double>(count) * std::log(num_docs / freq);
    }
    return vec;
  };
  auto cosine = [](const std::map<std::string, double>& a,
                   const std::map<std::string, double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [gram, w] : a) {
      na += w * w;
      if (auto it = b.find(gram); it != b.end()) dot += w * it->second;
    }
    for (const auto& [gram, w] : b) nb += w * w;
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
  };

  double total = 0.0;
  for (const ScoredPair& pair : corpus.pairs) {
    double pair_score = 0.0;
    for (int order = 1; order <= kMaxOrder; ++order) {
      const auto cand_vec = tfidf(pair.candidate, order);
      double ref_avg = 0.0;
      for (const TokenSeq& ref : pair.references)
        ref_avg += cosine(cand_vec, tfidf(ref, order));
      pair_score += ref_avg / static_cast<double>(pair.references.size());
    }
    total += 10.0 * pair_score / kMaxOrder;
  }
  return total / num_docs;
}

}  // namespace vqi
