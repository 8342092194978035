#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "patchrank/embedding.hpp"
#include "patchrank/similarity.hpp"

namespace patchrank {

struct RunConfig {
  std::filesystem::path corpus_root;
  std::filesystem::path out_root;
  EmbeddingConfig embedding;
  int radius = 3;
  Metric metric = Metric::CosMul;
  bool parallel = false;  // per-bug concurrency, not covered by determinism
};

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitHardError = 1;
inline constexpr int kExitPartialFailure = 2;

/// ingest -> tokenize -> train per bug -> rank -> evaluate (when annotated)
/// -> report. Diagnostics go to `diag`; data only to files under out_root.
int run_pipeline(const RunConfig& config, std::ostream& diag);

// Stage commands over persisted artifacts, so each stage can be rerun on its
// own: models under out/models, rankings under out/rankings, evals in
// out/evals.json, reports under out/charts and out/ndcg.csv.
int cmd_ingest(const RunConfig& config, std::ostream& diag);
int cmd_train(const RunConfig& config, std::ostream& diag);
int cmd_rank(const RunConfig& config, std::ostream& diag);
int cmd_eval(const RunConfig& config, std::ostream& diag);
int cmd_report(const RunConfig& config, std::ostream& diag);

/// Walks bugs without an annotations.json, prompting on `in` for a relevance
/// score per candidate; writes annotations.json into each bug directory.
int cmd_annotate(const RunConfig& config, const std::string& annotator_id, std::istream& in,
                 std::ostream& out, std::ostream& diag);

}  // namespace patchrank
