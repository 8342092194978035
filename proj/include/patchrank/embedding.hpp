#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "patchrank/tokenizer.hpp"

namespace patchrank {

struct EmbeddingConfig {
  int dim = 256;
  int window = 5;
  int min_count = 2;
  int epochs = 50;
  int negative_samples = 5;
  double alpha_start = 0.025;
  double alpha_end = 0.0001;
  std::uint64_t seed = 42;
  bool deterministic = true;
};

void validate_config(const EmbeddingConfig& config);

struct Vocabulary {
  std::vector<std::string> tokens;         // index -> token, dense 0..V-1
  std::vector<std::uint64_t> frequencies;  // index -> corpus frequency
  std::unordered_map<std::string, int> index;
  std::vector<double> noise_cdf;  // cumulative unigram^0.75, normalized

  int size() const { return static_cast<int>(tokens.size()); }
  std::optional<int> lookup(const std::string& token) const;
};

Vocabulary build_vocabulary(const std::vector<TokenSequence>& corpus, int min_count);

struct EmbeddingModel {
  EmbeddingConfig config;
  Vocabulary vocab;
  std::vector<float> word_vectors;     // V x dim, row-major
  std::vector<float> context_weights;  // V x dim, output layer
  std::vector<float> doc_vectors;      // D x dim
  std::vector<std::string> doc_ids;    // row -> doc_id
  std::unordered_map<std::string, int> doc_index;

  std::vector<float> doc_vector(const std::string& doc_id) const;
};

EmbeddingModel train(const std::vector<TokenSequence>& corpus, const EmbeddingConfig& config);

void save_model(const EmbeddingModel& model, const std::filesystem::path& path);
EmbeddingModel load_model(const std::filesystem::path& path);

// One PV-DM negative-sampling step: the hidden state is the mean of the
// input rows (context word vectors plus the document vector), the target
// word is the positive sample. Templated so tests can run the same math in
// double precision.
namespace pvdm {

template <class T>
T sigmoid(T x) {
  if (x > T(6)) x = T(6);
  if (x < T(-6)) x = T(-6);
  return T(1) / (T(1) + std::exp(-x));
}

template <class T>
std::vector<T> hidden_mean(const std::vector<const T*>& inputs, int dim) {
  std::vector<T> h(static_cast<std::size_t>(dim), T(0));
  for (const T* row : inputs)
    for (int d = 0; d < dim; ++d) h[d] += row[d];
  const T inv = T(1) / T(inputs.size());
  for (int d = 0; d < dim; ++d) h[d] *= inv;
  return h;
}

template <class T>
T dot(const T* u, const T* v, int dim) {
  T s = T(0);
  for (int d = 0; d < dim; ++d) s += u[d] * v[d];
  return s;
}

// Negative-sampling loss: -log s(h.t) - sum_j log s(-h.n_j)
template <class T>
T step_loss(const std::vector<const T*>& inputs, const T* target,
            const std::vector<const T*>& noise, int dim) {
  const std::vector<T> h = hidden_mean(inputs, dim);
  T loss = -std::log(sigmoid(dot(h.data(), target, dim)));
  for (const T* n : noise) loss -= std::log(sigmoid(-dot(h.data(), n, dim)));
  return loss;
}

template <class T>
struct StepGrad {
  std::vector<T> input;                // d(loss)/d(each input row), dim
  std::vector<T> target;               // d(loss)/d(target output row)
  std::vector<std::vector<T>> noise;   // d(loss)/d(each noise output row)
};

template <class T>
StepGrad<T> step_gradients(const std::vector<const T*>& inputs, const T* target,
                           const std::vector<const T*>& noise, int dim) {
  const std::vector<T> h = hidden_mean(inputs, dim);
  StepGrad<T> g;
  g.input.assign(static_cast<std::size_t>(dim), T(0));
  g.target.resize(static_cast<std::size_t>(dim));
  std::vector<T> h_grad(static_cast<std::size_t>(dim), T(0));

  const T gt = sigmoid(dot(h.data(), target, dim)) - T(1);
  for (int d = 0; d < dim; ++d) {
    g.target[d] = gt * h[d];
    h_grad[d] += gt * target[d];
  }
  g.noise.reserve(noise.size());
  for (const T* n : noise) {
    const T gn = sigmoid(dot(h.data(), n, dim));
    std::vector<T> ng(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) {
      ng[d] = gn * h[d];
      h_grad[d] += gn * n[d];
    }
    g.noise.push_back(std::move(ng));
  }
  const T inv = T(1) / T(inputs.size());
  for (int d = 0; d < dim; ++d) g.input[d] = h_grad[d] * inv;
  return g;
}

}  // namespace pvdm

}  // namespace patchrank
