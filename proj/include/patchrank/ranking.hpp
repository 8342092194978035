#pragma once

#include <map>
#include <string>
#include <vector>

#include "patchrank/corpus.hpp"
#include "patchrank/embedding.hpp"
#include "patchrank/similarity.hpp"

namespace patchrank {

struct RankEntry {
  std::string doc_id;
  VariantKind kind = VariantKind::Candidate;
  double score = 0.0;
  int rank = 0;  // 1-based, no gaps
};

struct RankedList {
  std::string bug_id;
  Metric metric = Metric::CosMul;
  std::vector<RankEntry> entries;  // sorted by score descending
};

/// Scores the developer fix and every candidate against the original snippet
/// vector and sorts descending. Ties break DeveloperFix first, then
/// lexicographic doc_id.
RankedList rank_bug(const EmbeddingModel& model, const BugCase& bug,
                    Metric metric = Metric::CosMul);

struct RankOutcome {
  std::vector<RankedList> rankings;
  std::vector<std::string> errors;  // "<bug_id>: <message>" per failed bug
};

RankOutcome rank_all(const std::map<std::string, EmbeddingModel>& models,
                     const CorpusManifest& manifest, Metric metric = Metric::CosMul);

}  // namespace patchrank
