#include "patchrank/ranking.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace patchrank {

RankedList rank_bug(const EmbeddingModel& model, const BugCase& bug, Metric metric) {
  auto vector_of = [&](const std::string& doc_id) {
    if (!model.doc_index.count(doc_id))
      throw std::runtime_error("missing doc vector for " + doc_id);
    return to_double(model.doc_vector(doc_id));
  };

  const std::vector<double> original = vector_of(original_doc_id(bug.bug_id));

  RankedList list;
  list.bug_id = bug.bug_id;
  list.metric = metric;

  auto score = [&](const std::vector<double>& v) {
    return metric == Metric::CosMul ? cosmul(v, {original}, {}) : cosine(v, original);
  };

  list.entries.push_back(
      {developer_doc_id(bug.bug_id), VariantKind::DeveloperFix,
       score(vector_of(developer_doc_id(bug.bug_id))), 0});
  for (const auto& [id, source] : bug.candidates) {
    (void)source;
    const std::string doc_id = candidate_doc_id(bug.bug_id, id);
    list.entries.push_back({doc_id, VariantKind::Candidate, score(vector_of(doc_id)), 0});
  }

  // Descending score; ties put the developer fix first, then lexicographic
  // doc_id, so output is a total order.
  std::stable_sort(list.entries.begin(), list.entries.end(),
                   [](const RankEntry& a, const RankEntry& b) {
                     if (a.score != b.score) return a.score > b.score;
                     const int ka = a.kind == VariantKind::DeveloperFix ? 0 : 1;
                     const int kb = b.kind == VariantKind::DeveloperFix ? 0 : 1;
                     if (ka != kb) return ka < kb;
                     return a.doc_id < b.doc_id;
                   });
  for (std::size_t i = 0; i < list.entries.size(); ++i)
    list.entries[i].rank = static_cast<int>(i) + 1;
  return list;
}

RankOutcome rank_all(const std::map<std::string, EmbeddingModel>& models,
                     const CorpusManifest& manifest, Metric metric) {
  RankOutcome outcome;
  for (const auto& bug : manifest.bugs) {
    try {
      auto it = models.find(bug.bug_id);
      if (it == models.end()) throw std::runtime_error("no model for bug " + bug.bug_id);
      outcome.rankings.push_back(rank_bug(it->second, bug, metric));
    } catch (const std::exception& e) {
      outcome.errors.push_back(bug.bug_id + ": " + e.what());
    }
  }
  return outcome;
}

}  // namespace patchrank
