#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "patchrank/evaluation.hpp"
#include "patchrank/ranking.hpp"

namespace patchrank {

struct BugSummary {
  std::string bug_id;
  int candidate_count = 0;
  int dev_fix_rank = 0;  // 0 when unknown
  int syntactic_matches = 0;
  bool evaluated = false;
};

struct ReportBundle {
  std::vector<RankedList> rankings;
  std::vector<EvalResult> evals;      // subset of rankings' bugs
  std::vector<BugSummary> summaries;  // one per bug, manifest order
};

/// Bar chart of per-bug nDCG values, y-range [0,1], one labelled bar per bug.
/// Output is a self-contained SVG; identical inputs yield identical bytes.
void emit_ndcg_chart(const std::vector<EvalResult>& evals, const std::filesystem::path& path);

/// Score-vs-rank markers for one bug. The developer fix is drawn as a
/// diamond; candidate markers are colored by relevance band when annotations
/// are given.
void emit_similarity_chart(const RankedList& ranked, const AnnotationSet* annotations,
                           const std::filesystem::path& path);

// Columns: bug_id,candidates,dev_fix_rank,dcg,idcg,ndcg,syntactic_matches
// (metrics printed to 6 decimals, empty when the bug was not evaluated).
void emit_summary_csv(const ReportBundle& bundle, const std::filesystem::path& path);

}  // namespace patchrank
