// vqi: implication generation and consistency/robustness evaluation for
// VQA prediction files. All reports go to stdout as JSON; --pretty
// switches to indented output.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vqi/cyclic.hpp"
#include "vqi/dataset.hpp"
#include "vqi/error.hpp"
#include "vqi/implication.hpp"
#include "vqi/metrics_nlg.hpp"
#include "vqi/metrics_vqa.hpp"
#include "vqi/parallel.hpp"
#include "vqi/question.hpp"
#include "vqi/text.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
  bool pretty = false;
  unsigned jobs = std::thread::hardware_concurrency();
};

void emit(const ordered_json& doc, bool pretty) {
  if (pretty)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << doc.dump() << "\n";
}

ordered_json rate_bucket_json(const vqi::RateBucket& bucket) {
  ordered_json obj;
  obj["correct"] = bucket.correct;
  obj["total"] = bucket.total;
  if (auto rate = bucket.rate())
    obj["rate"] = *rate;
  else
    obj["rate"] = nullptr;
  return obj;
}

std::vector<vqi::QAPair> load_qa(const std::string& questions_path,
                                 const std::string& annotations_path) {
  std::vector<vqi::QAPair> questions = vqi::read_vqa_questions(questions_path);
  vqi::merge_annotations(questions, vqi::read_vqa_annotations(annotations_path));
  return questions;
}

vqi::GroundTruth ground_truth_from(const std::vector<vqi::QAPair>& questions) {
  vqi::GroundTruth gt;
  for (const vqi::QAPair& qa : questions) {
    vqi::GroundTruth::Entry entry;
    entry.answer = qa.answer;
    entry.human_answers = qa.human_answers;
    entry.image_id = qa.image_id;
    gt.entries[qa.question_id] = std::move(entry);
  }
  return gt;
}

std::set<vqi::ImplicationType> parse_types(const std::string& csv) {
  std::set<vqi::ImplicationType> types;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto t = vqi::implication_type_from_name(item);
    if (!t)
      throw vqi::Error(vqi::ErrorCode::InvalidInput,
                       "unknown implication type \"" + item + "\"");
    types.insert(*t);
  }
  if (types.empty())
    throw vqi::Error(vqi::ErrorCode::InvalidInput, "empty --types list");
  return types;
}

int cmd_generate(const std::string& questions_path,
                 const std::string& annotations_path, const std::string& out,
                 const std::string& types_csv, const CommonOpts& opts) {
  const auto types = parse_types(types_csv);
  const std::vector<vqi::QAPair> corpus =
      load_qa(questions_path, annotations_path);

  std::vector<std::vector<vqi::ImplicationRecord>> slots(corpus.size());
  std::vector<std::string> kinds(corpus.size());
  vqi::parallel_for(corpus.size(), opts.jobs, [&](std::size_t i) {
    const vqi::QAPair& qa = corpus[i];
    vqi::ParsedQuestion pq;
    try {
      pq = vqi::classify(vqi::normalize(qa.question));
    } catch (const vqi::Error&) {
      pq.kind = vqi::QuestionKind::Other;
    }
    kinds[i] = vqi::question_kind_name(pq.kind);
    for (const vqi::Implication& imp :
         vqi::generate_all(pq, qa.answer).produced) {
      if (!types.count(imp.itype)) continue;
      vqi::ImplicationRecord rec;
      rec.itype = vqi::implication_type_name(imp.itype);
      rec.implication_id = vqi::implication_id_for(qa.question_id, rec.itype);
      rec.source_question_id = qa.question_id;
      rec.image_id = qa.image_id;
      rec.question = imp.surface;
      rec.answer = imp.answer;
      slots[i].push_back(std::move(rec));
    }
  });

  std::vector<vqi::ImplicationRecord> records;
  std::size_t eligible = 0;
  std::map<std::string, std::size_t> per_kind, per_type;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    ++per_kind[kinds[i]];
    if (!slots[i].empty()) ++eligible;
    for (vqi::ImplicationRecord& rec : slots[i]) {
      ++per_type[rec.itype];
      records.push_back(std::move(rec));
    }
  }
  vqi::write_implications(records, out);

  ordered_json summary;
  summary["total"] = corpus.size();
  summary["eligible"] = eligible;
  summary["eligible_fraction"] =
      corpus.empty() ? 0.0
                     : static_cast<double>(eligible) /
                           static_cast<double>(corpus.size());
  summary["per_kind_counts"] = per_kind;
  summary["per_type_generated"] = per_type;
  summary["implications_written"] = records.size();
  emit(summary, opts.pretty);
  return 0;
}

int cmd_consistency(const std::string& orig_pred_path,
                    const std::string& imp_pred_path,
                    const std::string& annotations_path,
                    const std::string& questions_path,
                    const std::string& implications_path,
                    const CommonOpts& opts) {
  const vqi::GroundTruth gt =
      ground_truth_from(load_qa(questions_path, annotations_path));
  const vqi::ConsistencyReport report = vqi::consistency(
      vqi::read_predictions(orig_pred_path),
      vqi::read_predictions(imp_pred_path), gt,
      vqi::read_implications(implications_path));

  ordered_json doc;
  ordered_json per_type;
  // Table order: logeq, nec, mutex.
  for (const char* type : {"logeq", "nec", "mutex"})
    per_type[type] = rate_bucket_json(report.per_type.at(type));
  doc["per_type"] = std::move(per_type);
  doc["overall"] = rate_bucket_json(report.overall);
  doc["originals_correct"] = report.originals_correct;
  emit(doc, opts.pretty);
  return 0;
}

int cmd_robustness(const std::string& orig_pred_path,
                   const std::string& reph_pred_path,
                   const std::string& annotations_path,
                   const std::string& questions_path,
                   const std::string& rephrasings_path,
                   const CommonOpts& opts) {
  const vqi::GroundTruth gt =
      ground_truth_from(load_qa(questions_path, annotations_path));
  const vqi::RephrasingFile rephrasings =
      vqi::read_rephrasings(rephrasings_path);
  const auto score =
      vqi::robustness(vqi::read_predictions(orig_pred_path),
                      vqi::read_predictions(reph_pred_path), gt,
                      rephrasings.groups);
  ordered_json doc;
  if (score)
    doc["robustness"] = *score;
  else
    doc["robustness"] = nullptr;
  doc["groups"] = rephrasings.groups.size();
  emit(doc, opts.pretty);
  return 0;
}

vqi::ScoredCorpus load_nlg_corpus(const std::string& candidates_path,
                                  const std::string& references_path) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw vqi::Error(vqi::ErrorCode::IoError, "cannot open " + path);
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded())
      throw vqi::Error(vqi::ErrorCode::MalformedJson, "invalid JSON in " + path);
    if (!doc.is_array())
      throw vqi::Error(vqi::ErrorCode::MalformedJson, path + " is not an array");
    return doc;
  };
  const nlohmann::json candidates = load(candidates_path);
  const nlohmann::json references = load(references_path);
  if (candidates.size() != references.size())
    throw vqi::Error(vqi::ErrorCode::LengthMismatch,
                     "candidate and reference counts differ");
  vqi::ScoredCorpus corpus;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!candidates[i].is_string() || !references[i].is_array() ||
        references[i].empty())
      throw vqi::Error(vqi::ErrorCode::MalformedJson,
                       "entry " + std::to_string(i));
    vqi::ScoredPair pair;
    pair.candidate = vqi::normalize(candidates[i].get<std::string>());
    for (const nlohmann::json& ref : references[i]) {
      if (!ref.is_string())
        throw vqi::Error(vqi::ErrorCode::MalformedJson,
                         "reference in entry " + std::to_string(i));
      pair.references.push_back(vqi::normalize(ref.get<std::string>()));
    }
    corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

int cmd_nlg(const std::string& candidates_path,
            const std::string& references_path, const CommonOpts& opts) {
  const vqi::ScoredCorpus corpus =
      load_nlg_corpus(candidates_path, references_path);
  ordered_json doc;
  doc["bleu1"] = vqi::bleu(corpus, 1);
  doc["bleu2"] = vqi::bleu(corpus, 2);
  doc["bleu3"] = vqi::bleu(corpus, 3);
  doc["bleu4"] = vqi::bleu(corpus, 4);
  doc["rouge_l"] = vqi::rouge_l(corpus);
  doc["meteor"] = vqi::meteor(corpus);
  doc["cider"] = vqi::cider(corpus);
  emit(doc, opts.pretty);
  return 0;
}

int cmd_attention(const std::string& maps_a_path,
                  const std::string& maps_b_path, const CommonOpts& opts) {
  const auto maps_a = vqi::read_attention_maps(maps_a_path);
  const auto maps_b = vqi::read_attention_maps(maps_b_path);
  std::set<std::int64_t> ids_b;
  for (const vqi::AttentionMap& m : maps_b) ids_b.insert(m.question_id);
  std::vector<std::pair<std::int64_t, std::int64_t>> pairing;
  for (const vqi::AttentionMap& m : maps_a)
    if (ids_b.count(m.question_id))
      pairing.emplace_back(m.question_id, m.question_id);
  const double distance = vqi::attention_distance(maps_a, maps_b, pairing);
  ordered_json doc;
  doc["mean_distance"] = distance;
  doc["pairs"] = pairing.size();
  emit(doc, opts.pretty);
  return 0;
}

int cmd_cyclic_demo(const std::string& questions_path,
                    const std::string& annotations_path, std::uint64_t steps,
                    const std::string& knob_name, const vqi::CyclicConfig& cfg,
                    unsigned seed, const CommonOpts& opts) {
  const auto knob = vqi::implication_type_from_name(knob_name);
  if (!knob)
    throw vqi::Error(vqi::ErrorCode::InvalidInput,
                     "unknown knob \"" + knob_name + "\"");
  const std::vector<vqi::QAPair> corpus =
      load_qa(questions_path, annotations_path);
  if (corpus.empty())
    throw vqi::Error(vqi::ErrorCode::EmptyCorpus, "no questions to step over");

  std::set<std::string> vocab_set = {"yes", "no"};
  for (const vqi::QAPair& qa : corpus)
    if (!qa.answer.empty()) vocab_set.insert(qa.answer);
  vqi::ToyAnswerer answerer(
      std::vector<std::string>(vocab_set.begin(), vocab_set.end()), seed);

  for (std::uint64_t it = 0; it < steps; ++it) {
    const vqi::QAPair& qa = corpus[it % corpus.size()];
    const vqi::CyclicStepTrace trace =
        vqi::cyclic_step(answerer, qa, *knob, cfg, it);
    ordered_json line;
    line["iteration"] = trace.iteration;
    line["l_vqa"] = trace.l_vqa;
    line["l_q"] = trace.l_q;
    line["l_imp"] = trace.l_imp;
    line["l_total"] = trace.l_total;
    line["gate_open"] = trace.gate_open;
    line["cycle_active"] = trace.cycle_active;
    line["t_sim"] = cfg.t_sim;
    line["predicted_answer"] = trace.predicted_answer;
    if (trace.skipped_reason)
      line["skipped_reason"] = vqi::skip_reason_name(*trace.skipped_reason);
    if (!trace.generated_surface.empty()) {
      line["generated"] = trace.generated_surface;
      line["implied_target"] = trace.implied_target;
    }
    std::cout << line.dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Implication generation and evaluation for VQA predictions"};
  app.require_subcommand(1);
  app.set_config("--config")->description(
      "key=value config file; command-line flags override");

  CommonOpts opts;
  app.add_flag("--pretty", opts.pretty, "indent JSON output");
  app.add_option("--jobs", opts.jobs, "worker thread count");
  unsigned seed = 0;
  app.add_option("--seed", seed, "RNG seed for the toy answerer");

  std::string questions, annotations, predictions, imp_predictions,
      implications, rephrasings, out, types = "logeq,nec,mutex";
  std::string candidates, references, maps_a, maps_b, knob = "logeq";
  std::uint64_t steps = 10;
  vqi::CyclicConfig cfg;

  CLI::App* generate = app.add_subcommand(
      "generate", "build an implication dataset from questions+annotations");
  generate->fallthrough();
  generate->add_option("--questions", questions)->required();
  generate->add_option("--annotations", annotations)->required();
  generate->add_option("--out", out)->required();
  generate->add_option("--types", types, "comma list of logeq,nec,mutex");

  CLI::App* consistency = app.add_subcommand(
      "consistency", "score implication predictions against originals");
  consistency->fallthrough();
  consistency->add_option("--predictions", predictions)->required();
  consistency->add_option("--implication-predictions", imp_predictions)
      ->required();
  consistency->add_option("--questions", questions)->required();
  consistency->add_option("--annotations", annotations)->required();
  consistency->add_option("--implications", implications)->required();

  CLI::App* robustness = app.add_subcommand(
      "robustness", "score rephrasing predictions against originals");
  robustness->fallthrough();
  robustness->add_option("--predictions", predictions)->required();
  robustness->add_option("--rephrasing-predictions", imp_predictions)
      ->required();
  robustness->add_option("--questions", questions)->required();
  robustness->add_option("--annotations", annotations)->required();
  robustness->add_option("--rephrasings", rephrasings)->required();

  CLI::App* nlg = app.add_subcommand(
      "nlg", "BLEU-1..4, ROUGE-L, METEOR and CIDEr over candidate files");
  nlg->fallthrough();
  nlg->add_option("--candidates", candidates)->required();
  nlg->add_option("--references", references)->required();

  CLI::App* attention = app.add_subcommand(
      "attention", "mean Euclidean distance between paired attention maps");
  attention->fallthrough();
  attention->add_option("--maps-a", maps_a)->required();
  attention->add_option("--maps-b", maps_b)->required();

  CLI::App* cyclic = app.add_subcommand(
      "cyclic-demo", "trace cyclic training steps with the toy answerer");
  cyclic->fallthrough();
  cyclic->add_option("--questions", questions)->required();
  cyclic->add_option("--annotations", annotations)->required();
  cyclic->add_option("--steps", steps);
  cyclic->add_option("--knob", knob, "logeq|nec|mutex");
  cyclic->add_option("--t-sim", cfg.t_sim);
  cyclic->add_option("--a-iter", cfg.a_iter);
  cyclic->add_option("--lambda-q", cfg.weights.lambda_q);
  cyclic->add_option("--lambda-imp", cfg.weights.lambda_imp);

  CLI11_PARSE(app, argc, argv);
  if (opts.jobs == 0) opts.jobs = 1;

  try {
    if (generate->parsed())
      return cmd_generate(questions, annotations, out, types, opts);
    if (consistency->parsed())
      return cmd_consistency(predictions, imp_predictions, annotations,
                             questions, implications, opts);
    if (robustness->parsed())
      return cmd_robustness(predictions, imp_predictions, annotations,
                            questions, rephrasings, opts);
    if (nlg->parsed()) return cmd_nlg(candidates, references, opts);
    if (attention->parsed()) return cmd_attention(maps_a, maps_b, opts);
    if (cyclic->parsed())
      return cmd_cyclic_demo(questions, annotations, steps, knob, cfg, seed,
                             opts);
  } catch (const vqi::Error& e) {
    ordered_json err;
    err["error"]["code"] = vqi::error_code_name(e.code());
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"]["code"] = "InternalError";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 1;
}
