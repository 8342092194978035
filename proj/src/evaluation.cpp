#include "patchrank/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "patchrank/tokenizer.hpp"

namespace patchrank {

bool is_valid_relevance(double value) {
  if (!(value >= -1.0 && value <= 3.0)) return false;
  const double doubled = value * 2.0;
  return std::abs(doubled - std::round(doubled)) < 1e-9;
}

double check_relevance(double value) {
  if (!is_valid_relevance(value))
    throw std::runtime_error("invalid relevance score " + std::to_string(value) +
                             " (must be a multiple of 0.5 in [-1,3])");
  return value;
}

AnnotationSet load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("malformed annotations " + path.string() + ": " + e.what());
  }
  if (!j.contains("bug_id") || !j.contains("annotator") || !j.contains("scores"))
    throw std::runtime_error("annotations " + path.string() +
                             " must have bug_id, annotator and scores fields");
  AnnotationSet set;
  set.bug_id = j["bug_id"].get<std::string>();
  set.annotator_id = j["annotator"].get<std::string>();
  for (const auto& [doc_id, value] : j["scores"].items()) {
    if (!value.is_number())
      throw std::runtime_error("annotations " + path.string() + ": score for " + doc_id +
                               " is not a number");
    set.scores[doc_id] = check_relevance(value.get<double>());
  }
  return set;
}

void save_annotations(const AnnotationSet& annotations, const std::filesystem::path& path) {
  nlohmann::json scores = nlohmann::json::object();
  for (const auto& [doc_id, value] : annotations.scores) scores[doc_id] = value;
  nlohmann::json j{{"bug_id", annotations.bug_id},
                   {"annotator", annotations.annotator_id},
                   {"scores", scores}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

bool syntactic_match(const std::string& a, const std::string& b) {
  return normalize_whitespace(a) == normalize_whitespace(b);
}

double dcg(const std::vector<double>& relevances, int p) {
  if (p < 1 || p > static_cast<int>(relevances.size()))
    throw std::runtime_error("dcg: p out of range");
  double sum = 0.0;
  for (int i = 1; i <= p; ++i)
    sum += (std::exp2(relevances[static_cast<std::size_t>(i - 1)]) - 1.0) /
           std::log2(static_cast<double>(i) + 1.0);
  return sum;
}

double idcg(const std::vector<double>& relevances, int p) {
  std::vector<double> sorted = relevances;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  return dcg(sorted, p);
}

EvalResult ndcg(const std::vector<double>& ranked_relevances, int p) {
  EvalResult result;
  result.p = p;
  result.dcg = dcg(ranked_relevances, p);
  result.idcg = idcg(ranked_relevances, p);
  if (result.idcg > 0.0) {
    result.ndcg = result.dcg / result.idcg;
  } else {
    result.ndcg = 0.0;
    result.idcg_nonpositive = true;
  }
  return result;
}

EvalResult evaluate_bug(const RankedList& ranked, const AnnotationSet& annotations) {
  if (ranked.entries.empty())
    throw std::runtime_error("bug " + ranked.bug_id + ": empty ranking");
  std::vector<std::string> missing;
  std::vector<double> relevances;
  relevances.reserve(ranked.entries.size());
  for (const auto& entry : ranked.entries) {
    auto it = annotations.scores.find(entry.doc_id);
    if (it == annotations.scores.end()) {
      missing.push_back(entry.doc_id);
      continue;
    }
    if (entry.kind == VariantKind::DeveloperFix && it->second != 3.0)
      throw std::runtime_error("bug " + ranked.bug_id + ": developer fix " + entry.doc_id +
                               " must have relevance 3");
    relevances.push_back(check_relevance(it->second));
  }
  if (!missing.empty()) {
    std::string ids;
    for (const auto& id : missing) ids += (ids.empty() ? "" : ", ") + id;
    throw std::runtime_error("bug " + ranked.bug_id + ": unannotated documents: " + ids);
  }
  EvalResult result = ndcg(relevances, static_cast<int>(relevances.size()));
  result.bug_id = ranked.bug_id;
  return result;
}

AnnotationSet merge_annotations(const AnnotationSet& a, const AnnotationSet& b,
                                const AnnotationSet& arbiter) {
  auto coverage_error = [&](const char* who) {
    throw std::runtime_error(std::string("merge_annotations: annotators ") + who +
                             " do not cover the same documents");
  };
  if (a.scores.size() != b.scores.size()) coverage_error("a and b");
  for (const auto& [doc_id, value] : a.scores) {
    (void)value;
    if (!b.scores.count(doc_id)) coverage_error("a and b");
  }

  AnnotationSet merged;
  merged.bug_id = a.bug_id;
  merged.annotator_id = a.annotator_id + "+" + b.annotator_id;
  std::vector<std::string> unresolved;
  for (const auto& [doc_id, value_a] : a.scores) {
    const double value_b = b.scores.at(doc_id);
    if (value_a == value_b) {
      merged.scores[doc_id] = value_a;
      continue;
    }
    auto it = arbiter.scores.find(doc_id);
    if (it == arbiter.scores.end()) {
      unresolved.push_back(doc_id);
      continue;
    }
    merged.scores[doc_id] = it->second;
  }
  if (!unresolved.empty()) {
    std::string ids;
    for (const auto& id : unresolved) ids += (ids.empty() ? "" : ", ") + id;
    throw std::runtime_error("merge_annotations: disagreement without arbiter entry for: " + ids);
  }
  return merged;
}

}  // namespace patchrank
