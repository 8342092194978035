#include "patchrank/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace patchrank {

std::string to_string(Metric metric) {
  return metric == Metric::Cosine ? "cosine" : "cosmul";
}

Metric metric_from_string(const std::string& s) {
  if (s == "cosine") return Metric::Cosine;
  if (s == "cosmul") return Metric::CosMul;
  throw std::runtime_error("unknown metric: " + s);
}

double cosine(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size()) throw std::runtime_error("cosine: length mismatch");
  if (u.empty()) throw std::runtime_error("cosine: empty vectors");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw std::runtime_error("cosine: zero-norm vector");
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double cosmul(const std::vector<double>& candidate,
              const std::vector<std::vector<double>>& positives,
              const std::vector<std::vector<double>>& negatives, double epsilon) {
  if (positives.empty()) throw std::runtime_error("cosmul: positives must be non-empty");
  // Shifted cosine keeps every factor in [0,1].
  double num = 1.0;
  for (const auto& p : positives) num *= (1.0 + cosine(candidate, p)) / 2.0;
  double den = 1.0;
  for (const auto& n : negatives) den *= (1.0 + cosine(candidate, n)) / 2.0;
  return num / (den + epsilon);
}

std::vector<double> to_double(const std::vector<float>& v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace patchrank
