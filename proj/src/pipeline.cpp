#include "patchrank/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "patchrank/corpus.hpp"
#include "patchrank/evaluation.hpp"
#include "patchrank/ranking.hpp"
#include "patchrank/report.hpp"
#include "patchrank/tokenizer.hpp"

namespace patchrank {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// The out path is deliberately left out so identical runs into different
// directories stay byte-identical.
void write_run_config(const RunConfig& config) {
  const auto& e = config.embedding;
  json j{{"corpus", config.corpus_root.generic_string()},
         {"radius", config.radius},
         {"metric", to_string(config.metric)},
         {"dim", e.dim},
         {"window", e.window},
         {"min_count", e.min_count},
         {"epochs", e.epochs},
         {"negative", e.negative_samples},
         {"alpha_start", e.alpha_start},
         {"alpha_end", e.alpha_end},
         {"seed", e.seed},
         {"deterministic", e.deterministic},
         {"parallel", config.parallel}};
  write_text(config.out_root / "run-config.json", j.dump(2) + "\n");
}

json snippets_to_json(const std::string& bug_id, int radius,
                      const std::vector<SnippetWindow>& windows) {
  json arr = json::array();
  for (const auto& w : windows)
    arr.push_back(json{{"doc_id", w.doc_id},
                       {"kind", to_string(w.variant_kind)},
                       {"center_line", w.center_line},
                       {"first_line", w.first_line},
                       {"text", w.text}});
  return json{{"bug_id", bug_id}, {"radius", radius}, {"windows", arr}};
}

json ranking_to_json(const RankedList& list) {
  json entries = json::array();
  for (const auto& e : list.entries)
    entries.push_back(json{{"doc_id", e.doc_id},
                           {"kind", to_string(e.kind)},
                           {"score", e.score},
                           {"rank", e.rank}});
  return json{{"bug_id", list.bug_id}, {"metric", to_string(list.metric)}, {"entries", entries}};
}

RankedList ranking_from_json(const json& j) {
  RankedList list;
  list.bug_id = j.at("bug_id").get<std::string>();
  list.metric = metric_from_string(j.at("metric").get<std::string>());
  for (const auto& e : j.at("entries")) {
    list.entries.push_back({e.at("doc_id").get<std::string>(),
                            variant_kind_from_string(e.at("kind").get<std::string>()),
                            e.at("score").get<double>(), e.at("rank").get<int>()});
  }
  return list;
}

std::vector<TokenSequence> tokenize_windows(const std::vector<SnippetWindow>& windows) {
  std::vector<TokenSequence> corpus;
  corpus.reserve(windows.size());
  for (const auto& w : windows) corpus.push_back({w.doc_id, tokenize(w.text)});
  return corpus;
}

int count_syntactic_matches(const BugCase& bug) {
  int count = 0;
  for (const auto& [id, source] : bug.candidates) {
    (void)id;
    if (syntactic_match(source, bug.developer_fix_source)) ++count;
  }
  return count;
}

int dev_fix_rank_of(const RankedList& list) {
  for (const auto& e : list.entries)
    if (e.kind == VariantKind::DeveloperFix) return e.rank;
  return 0;
}

struct BugRecord {
  RankedList ranking;
  std::optional<EvalResult> eval;
  BugSummary summary;
};

BugRecord process_bug(const BugCase& bug, const RunConfig& config) {
  const std::vector<SnippetWindow> windows = bug_snippets(bug, config.radius);
  write_text(config.out_root / "snippets" / (bug.bug_id + ".json"),
             snippets_to_json(bug.bug_id, config.radius, windows).dump(2) + "\n");

  const std::vector<TokenSequence> docs = tokenize_windows(windows);
  const EmbeddingModel model = train(docs, config.embedding);
  fs::create_directories(config.out_root / "models");
  save_model(model, config.out_root / "models" / (bug.bug_id + ".pvdm"));

  BugRecord record;
  record.ranking = rank_bug(model, bug, config.metric);
  write_text(config.out_root / "rankings" / (bug.bug_id + ".json"),
             ranking_to_json(record.ranking).dump(2) + "\n");

  record.summary.bug_id = bug.bug_id;
  record.summary.candidate_count = static_cast<int>(bug.candidates.size());
  record.summary.dev_fix_rank = dev_fix_rank_of(record.ranking);
  record.summary.syntactic_matches = count_syntactic_matches(bug);

  if (bug.annotation_ref) {
    const AnnotationSet annotations = load_annotations(*bug.annotation_ref);
    if (annotations.bug_id != bug.bug_id)
      throw std::runtime_error("annotations bug_id '" + annotations.bug_id +
                               "' does not match bug " + bug.bug_id);
    EvalResult eval = evaluate_bug(record.ranking, annotations);
    eval.syntactic_match_present = record.summary.syntactic_matches > 0;
    record.eval = eval;
    record.summary.evaluated = true;
  }
  return record;
}

json eval_to_json(const EvalResult& e, const BugSummary& s) {
  return json{{"bug_id", e.bug_id},
              {"p", e.p},
              {"dcg", e.dcg},
              {"idcg", e.idcg},
              {"ndcg", e.ndcg},
              {"idcg_nonpositive", e.idcg_nonpositive},
              {"syntactic_match_present", e.syntactic_match_present},
              {"candidate_count", s.candidate_count},
              {"dev_fix_rank", s.dev_fix_rank},
              {"syntactic_matches", s.syntactic_matches}};
}

void emit_reports(const RunConfig& config, const std::vector<BugRecord>& records,
                  const std::map<std::string, AnnotationSet>& annotations, std::ostream& diag) {
  ReportBundle bundle;
  for (const auto& r : records) {
    bundle.rankings.push_back(r.ranking);
    if (r.eval) bundle.evals.push_back(*r.eval);
    bundle.summaries.push_back(r.summary);
  }
  emit_summary_csv(bundle, config.out_root / "ndcg.csv");
  for (const auto& r : records) {
    auto it = annotations.find(r.ranking.bug_id);
    emit_similarity_chart(r.ranking, it == annotations.end() ? nullptr : &it->second,
                          config.out_root / "charts" / (r.ranking.bug_id + ".svg"));
  }
  if (!bundle.evals.empty())
    emit_ndcg_chart(bundle.evals, config.out_root / "charts" / "ndcg.svg");
  else if (annotations.empty())
    diag << "notice: no annotations found, evaluation skipped\n";
}

void write_evals_json(const RunConfig& config, const std::vector<BugRecord>& records) {
  json arr = json::array();
  for (const auto& r : records)
    if (r.eval) arr.push_back(eval_to_json(*r.eval, r.summary));
  write_text(config.out_root / "evals.json", arr.dump(2) + "\n");
}

std::map<std::string, AnnotationSet> load_all_annotations(const CorpusManifest& manifest) {
  std::map<std::string, AnnotationSet> annotations;
  for (const auto& bug : manifest.bugs)
    if (bug.annotation_ref) annotations.emplace(bug.bug_id, load_annotations(*bug.annotation_ref));
  return annotations;
}

int finish(std::size_t total, const std::vector<std::string>& errors, std::ostream& diag) {
  for (const auto& e : errors) diag << "error: " << e << "\n";
  if (errors.empty()) return kExitOk;
  return errors.size() == total ? kExitHardError : kExitPartialFailure;
}

}  // namespace

int run_pipeline(const RunConfig& config, std::ostream& diag) {
  CorpusManifest manifest;
  std::vector<std::string> errors;
  try {
    validate_config(config.embedding);
    IngestOutcome ingested = ingest_corpus_lenient(config.corpus_root, config.radius);
    manifest = std::move(ingested.manifest);
    errors = std::move(ingested.errors);
    fs::create_directories(config.out_root);
    write_run_config(config);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitHardError;
  }

  const std::size_t n = manifest.bugs.size() + errors.size();
  std::vector<std::optional<BugRecord>> slots(manifest.bugs.size());
  std::mutex errors_mutex;

  auto work = [&](std::size_t i) {
    try {
      slots[i] = process_bug(manifest.bugs[i], config);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(errors_mutex);
      errors.push_back("bug " + manifest.bugs[i].bug_id + ": " + e.what());
    }
  };

  const std::size_t bug_count = manifest.bugs.size();
  if (config.parallel) {
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < bug_count; i = next.fetch_add(1)) work(i);
      });
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < bug_count; ++i) work(i);
  }

  std::vector<BugRecord> records;
  for (auto& slot : slots)
    if (slot) records.push_back(std::move(*slot));
  std::sort(errors.begin(), errors.end());

  try {
    write_evals_json(config, records);
    emit_reports(config, records, load_all_annotations(manifest), diag);
  } catch (const std::exception& e) {
    diag << "error: report stage: " << e.what() << "\n";
    return kExitHardError;
  }
  return finish(n, errors, diag);
}

int cmd_ingest(const RunConfig& config, std::ostream& diag) {
  try {
    const IngestOutcome ingested = ingest_corpus_lenient(config.corpus_root, config.radius);
    fs::create_directories(config.out_root);
    write_run_config(config);
    for (const auto& bug : ingested.manifest.bugs) {
      const auto windows = bug_snippets(bug, config.radius);
      write_text(config.out_root / "snippets" / (bug.bug_id + ".json"),
                 snippets_to_json(bug.bug_id, config.radius, windows).dump(2) + "\n");
    }
    diag << "ingested " << ingested.manifest.bugs.size() << " bugs\n";
    return finish(ingested.manifest.bugs.size() + ingested.errors.size(), ingested.errors, diag);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitHardError;
  }
}

int cmd_train(const RunConfig& config, std::ostream& diag) {
  CorpusManifest manifest;
  std::vector<std::string> errors;
  try {
    validate_config(config.embedding);
    IngestOutcome ingested = ingest_corpus_lenient(config.corpus_root, config.radius);
    manifest = std::move(ingested.manifest);
    errors = std::move(ingested.errors);
    fs::create_directories(config.out_root / "models");
    write_run_config(config);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitHardError;
  }
  const std::size_t total = manifest.bugs.size() + errors.size();
  for (const auto& bug : manifest.bugs) {
    try {
      const auto docs = tokenize_windows(bug_snippets(bug, config.radius));
      const EmbeddingModel model = train(docs, config.embedding);
      save_model(model, config.out_root / "models" / (bug.bug_id + ".pvdm"));
    } catch (const std::exception& e) {
      errors.push_back("bug " + bug.bug_id + ": " + e.what());
    }
  }
  return finish(total, errors, diag);
}

int cmd_rank(const RunConfig& config, std::ostream& diag) {
  CorpusManifest manifest;
  std::vector<std::string> errors;
  std::map<std::string, EmbeddingModel> models;
  try {
    IngestOutcome ingested = ingest_corpus_lenient(config.corpus_root, config.radius);
    manifest = std::move(ingested.manifest);
    errors = std::move(ingested.errors);
    write_run_config(config);
    for (const auto& bug : manifest.bugs) {
      const fs::path model_path = config.out_root / "models" / (bug.bug_id + ".pvdm");
      if (fs::exists(model_path)) models.emplace(bug.bug_id, load_model(model_path));
    }
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitHardError;
  }
  const RankOutcome outcome = rank_all(models, manifest, config.metric);
  for (const auto& list : outcome.rankings)
    write_text(config.out_root / "rankings" / (list.bug_id + ".json"),
               ranking_to_json(list).dump(2) + "\n");
  const std::size_t total = manifest.bugs.size() + errors.size();
  errors.insert(errors.end(), outcome.errors.begin(), outcome.errors.end());
  return finish(total, errors, diag);
}

int cmd_eval(const RunConfig& config, std::ostream& diag) {
  CorpusManifest manifest;
  std::vector<std::string> errors;
  try {
    IngestOutcome ingested = ingest_corpus_lenient(config.corpus_root, config.radius);
    manifest = std::move(ingested.manifest);
    errors = std::move(ingested.errors);
    write_run_config(config);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitHardError;
  }
  const std::size_t total = manifest.bugs.size() + errors.size();
  std::vector<BugRecord> records;
  bool any_annotated = false;
  for (const auto& bug : manifest.bugs) {
    try {
      const fs::path ranking_path = config.out_root / "rankings" / (bug.bug_id + ".json");
      if (!fs::exists(ranking_path))
        throw std::runtime_error("no ranking found (run `rank` first)");
      BugRecord record;
      record.ranking = ranking_from_json(json::parse(read_text(ranking_path)));
      record.summary.bug_id = bug.bug_id;
      record.summary.candidate_count = static_cast<int>(bug.candidates.size());
      record.summary.dev_fix_rank = dev_fix_rank_of(record.ranking);
      record.summary.syntactic_matches = count_syntactic_matches(bug);
      if (bug.annotation_ref) {
        any_annotated = true;
        EvalResult eval = evaluate_bug(record.ranking, load_annotations(*bug.annotation_ref));
        eval.syntactic_match_present = record.summary.syntactic_matches > 0;
        record.eval = eval;
        record.summary.evaluated = true;
      }
      records.push_back(std::move(record));
    } catch (const std::exception& e) {
      errors.push_back("bug " + bug.bug_id + ": " + e.what());
    }
  }
  try {
    write_evals_json(config, records);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitHardError;
  }
  if (!any_annotated) diag << "notice: no annotations found, evaluation skipped\n";
  return finish(total, errors, diag);
}

int cmd_report(const RunConfig& config, std::ostream& diag) {
  CorpusManifest manifest;
  std::vector<std::string> errors;
  std::map<std::string, json> evals;
  try {
    IngestOutcome ingested = ingest_corpus_lenient(config.corpus_root, config.radius);
    manifest = std::move(ingested.manifest);
    errors = std::move(ingested.errors);
    write_run_config(config);
    const fs::path evals_path = config.out_root / "evals.json";
    if (fs::exists(evals_path))
      for (const auto& e : json::parse(read_text(evals_path)))
        evals.emplace(e.at("bug_id").get<std::string>(), e);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitHardError;
  }

  const std::size_t total = manifest.bugs.size() + errors.size();
  std::vector<BugRecord> records;
  for (const auto& bug : manifest.bugs) {
    try {
      const fs::path ranking_path = config.out_root / "rankings" / (bug.bug_id + ".json");
      if (!fs::exists(ranking_path))
        throw std::runtime_error("no ranking found (run `rank` first)");
      BugRecord record;
      record.ranking = ranking_from_json(json::parse(read_text(ranking_path)));
      record.summary.bug_id = bug.bug_id;
      record.summary.candidate_count =
          static_cast<int>(record.ranking.entries.size()) - 1;
      record.summary.dev_fix_rank = dev_fix_rank_of(record.ranking);
      auto it = evals.find(bug.bug_id);
      if (it != evals.end()) {
        const json& e = it->second;
        EvalResult eval;
        eval.bug_id = bug.bug_id;
        eval.p = e.at("p").get<int>();
        eval.dcg = e.at("dcg").get<double>();
        eval.idcg = e.at("idcg").get<double>();
        eval.ndcg = e.at("ndcg").get<double>();
        eval.idcg_nonpositive = e.at("idcg_nonpositive").get<bool>();
        eval.syntactic_match_present = e.at("syntactic_match_present").get<bool>();
        record.eval = eval;
        record.summary.evaluated = true;
        record.summary.syntactic_matches = e.at("syntactic_matches").get<int>();
      }
      records.push_back(std::move(record));
    } catch (const std::exception& e) {
      errors.push_back("bug " + bug.bug_id + ": " + e.what());
    }
  }
  try {
    emit_reports(config, records, load_all_annotations(manifest), diag);
  } catch (const std::exception& e) {
    diag << "error: report stage: " << e.what() << "\n";
    return kExitHardError;
  }
  return finish(total, errors, diag);
}

int cmd_annotate(const RunConfig& config, const std::string& annotator_id, std::istream& in,
                 std::ostream& out, std::ostream& diag) {
  CorpusManifest manifest;
  try {
    manifest = ingest_corpus(config.corpus_root, config.radius);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitHardError;
  }
  auto line_at = [](const std::string& source, int line) -> std::string {
    const auto lines = split_lines(source);
    if (line < 1 || line > static_cast<int>(lines.size())) return "<out of range>";
    return lines[static_cast<std::size_t>(line - 1)];
  };
  for (const auto& bug : manifest.bugs) {
    if (bug.annotation_ref) continue;  // already annotated
    AnnotationSet set;
    set.bug_id = bug.bug_id;
    set.annotator_id = annotator_id;
    set.scores[developer_doc_id(bug.bug_id)] = 3.0;
    const int dev_line =
        locate_patched_line(bug.original_source, bug.developer_fix_source, bug.faulty_line);
    for (const auto& [id, source] : bug.candidates) {
      const int cand_line = locate_patched_line(bug.original_source, source, bug.faulty_line);
      out << "bug " << bug.bug_id << ", candidate " << id << "\n";
      out << "  original  " << bug.faulty_line << ": "
          << line_at(bug.original_source, bug.faulty_line) << "\n";
      out << "  developer " << dev_line << ": "
          << line_at(bug.developer_fix_source, dev_line) << "\n";
      out << "  - " << line_at(bug.original_source, cand_line) << "\n";
      out << "  + " << line_at(source, cand_line) << "\n";
      double score = 0.0;
      while (true) {
        out << "relevance [-1..3, halves]: " << std::flush;
        std::string answer;
        if (!std::getline(in, answer)) {
          diag << "error: input ended before bug " << bug.bug_id << " was fully annotated\n";
          return kExitHardError;
        }
        try {
          score = check_relevance(std::stod(answer));
          break;
        } catch (const std::exception&) {
          out << "invalid score, try again\n";
        }
      }
      set.scores[candidate_doc_id(bug.bug_id, id)] = score;
    }
    save_annotations(set, config.corpus_root / bug.bug_id / "annotations.json");
    diag << "wrote annotations for bug " << bug.bug_id << "\n";
  }
  return kExitOk;
}

}  // namespace patchrank
