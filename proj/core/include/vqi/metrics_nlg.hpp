#ifndef VQI_METRICS_NLG_HPP
#define VQI_METRICS_NLG_HPP

#include <vector>

#include "vqi/text.hpp"

namespace vqi {

struct ScoredPair {
  TokenSeq candidate;
  std::vector<TokenSeq> references;  // at least one
};

struct ScoredCorpus {
  std::vector<ScoredPair> pairs;
};

// Corpus-level BLEU-n: modified n-gram precision aggregated over the
// corpus, geometric mean over orders 1..n, brevity penalty exp(1 - r/c)
// when c < r (r = closest reference length).
double bleu(const ScoredCorpus& corpus, int n);

// LCS F-measure with beta = 1.2, max over references, mean over corpus.
double rouge_l(const ScoredCorpus& corpus);

// Exact + Porter-stem unigram alignment, F_mean = 10PR/(R+9P),
// fragmentation penalty 0.5 * (chunks/matches)^3.
double meteor(const ScoredCorpus& corpus);

// TF-IDF n-gram cosine for n = 1..4, averaged over references and orders,
// scaled by 10. Document frequencies counted over the reference sets.
double cider(const ScoredCorpus& corpus);

}  // namespace vqi

#endif  // VQI_METRICS_NLG_HPP
