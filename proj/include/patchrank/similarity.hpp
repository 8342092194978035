#pragma once

#include <string>
#include <vector>

namespace patchrank {

enum class Metric { Cosine, CosMul };

std::string to_string(Metric metric);
Metric metric_from_string(const std::string& s);

/// dot(u,v) / (|u| |v|). Throws on length mismatch or a zero-norm vector.
double cosine(const std::vector<double>& u, const std::vector<double>& v);

/// Multiplicative combination of shifted cosines: the product of
/// (1+cos(c,p))/2 over positives divided by (product over negatives + eps).
/// Positives must be non-empty.
double cosmul(const std::vector<double>& candidate,
              const std::vector<std::vector<double>>& positives,
              const std::vector<std::vector<double>>& negatives,
              double epsilon = 1e-6);

std::vector<double> to_double(const std::vector<float>& v);

}  // namespace patchrank
