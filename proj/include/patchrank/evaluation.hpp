#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "patchrank/ranking.hpp"

namespace patchrank {

// Relevance grades: 3 developer fix, 2 syntactic match, 1 semantic match,
// 0 uncertain, -1 incorrect; half-steps allowed.
bool is_valid_relevance(double value);
double check_relevance(double value);  // returns value, throws when invalid

struct AnnotationSet {
  std::string bug_id;
  std::string annotator_id;
  std::map<std::string, double> scores;  // doc_id -> relevance
};

AnnotationSet load_annotations(const std::filesystem::path& path);
void save_annotations(const AnnotationSet& annotations, const std::filesystem::path& path);

struct EvalResult {
  std::string bug_id;
  int p = 0;
  double dcg = 0.0;
  double idcg = 0.0;
  double ndcg = 0.0;
  bool idcg_nonpositive = false;
  bool syntactic_match_present = false;
};

/// True when the two texts are equal character by character once all
/// whitespace is removed.
bool syntactic_match(const std::string& a, const std::string& b);

// Graded-gain formulation: sum over the first p positions of
// (2^rel_i - 1) / log2(i + 1).
double dcg(const std::vector<double>& relevances, int p);

// dcg of the descending-sorted relevances, truncated at p.
double idcg(const std::vector<double>& relevances, int p);

// dcg/idcg; 0.0 with the non-positive flag set when idcg <= 0.
EvalResult ndcg(const std::vector<double>& ranked_relevances, int p);

/// Reads relevances off the ranking order (p = full list length) and
/// computes dcg/idcg/ndcg. Every entry must be annotated and the developer
/// fix must carry relevance 3 exactly.
EvalResult evaluate_bug(const RankedList& ranked, const AnnotationSet& annotations);

/// Two independent annotators plus an arbiter for the doc_ids they disagree
/// on; a disagreement the arbiter does not cover is an error.
AnnotationSet merge_annotations(const AnnotationSet& a, const AnnotationSet& b,
                                const AnnotationSet& arbiter);

}  // namespace patchrank
