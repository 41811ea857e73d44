#include <cstdint>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "vqi/dataset.hpp"
#include "vqi/error.hpp"
#include "vqi/implication.hpp"
#include "vqi/metrics_nlg.hpp"
#include "vqi/metrics_vqa.hpp"
#include "vqi/question.hpp"
#include "vqi/text.hpp"

namespace {

std::vector<vqi::QAPair> synthetic_corpus(std::int64_t n) {
  const char* templates[] = {
      "How many people are in the photo?", "What color is the car?",
      "Is this a dog?", "How many chairs are there?",
      "What kind of animal is this?"};
  const char* answers[] = {"4", "red", "yes", "2", "cat"};
  std::vector<vqi::QAPair> corpus;
  corpus.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    vqi::QAPair qa;
    qa.question_id = i;
    qa.image_id = i / 3;
    qa.question = templates[i % 5];
    qa.answer = answers[i % 5];
    corpus.push_back(std::move(qa));
  }
  return corpus;
}

void BM_GenerateImplications(benchmark::State& state) {
  const auto corpus = synthetic_corpus(state.range(0));
  for (auto _ : state) {
    std::size_t produced = 0;
    for (const vqi::QAPair& qa : corpus) {
      vqi::ParsedQuestion pq;
      try {
        pq = vqi::classify(vqi::normalize(qa.question));
      } catch (const vqi::Error&) {
        continue;
      }
      produced += vqi::generate_all(pq, qa.answer).produced.size();
    }
    benchmark::DoNotOptimize(produced);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateImplications)->Arg(1000)->Arg(10000);

void BM_Consistency(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  vqi::PredictionSet orig_pred, imp_pred;
  vqi::GroundTruth gt;
  std::vector<vqi::ImplicationRecord> implications;
  const char* type_names[] = {"logeq", "nec", "mutex"};
  for (std::int64_t qid = 1; qid <= n; ++qid) {
    gt.entries[qid] = {"3", std::nullopt, 1};
    orig_pred.answers[qid] = "3";
    for (int t = 0; t < 3; ++t) {
      vqi::ImplicationRecord rec;
      rec.itype = type_names[t];
      rec.implication_id = vqi::implication_id_for(qid, rec.itype);
      rec.source_question_id = qid;
      rec.image_id = 1;
      rec.question = "q";
      rec.answer = t == 2 ? "no" : "yes";
      imp_pred.answers[rec.implication_id] = rec.answer;
      implications.push_back(std::move(rec));
    }
  }
  for (auto _ : state) {
    const auto report = vqi::consistency(orig_pred, imp_pred, gt, implications);
    benchmark::DoNotOptimize(report.overall.correct);
  }
  state.SetItemsProcessed(state.iterations() * implications.size());
}
BENCHMARK(BM_Consistency)->Arg(1000)->Arg(10000);

vqi::ScoredCorpus nlg_corpus(std::int64_t n) {
  vqi::ScoredCorpus corpus;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::string suffix = std::to_string(i % 17);
    corpus.pairs.push_back(
        {vqi::normalize("are there " + suffix + " people in the photo"),
         {vqi::normalize("are there " + suffix + " people"),
          vqi::normalize("how many people are there")}});
  }
  return corpus;
}

void BM_Bleu4(benchmark::State& state) {
  const auto corpus = nlg_corpus(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vqi::bleu(corpus, 4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Bleu4)->Arg(1000)->Arg(10000);

void BM_Cider(benchmark::State& state) {
  const auto corpus = nlg_corpus(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vqi::cider(corpus));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Cider)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
