#include "patchrank/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

namespace patchrank {

void validate_config(const EmbeddingConfig& c) {
  if (c.dim < 1) throw std::runtime_error("dim must be >= 1");
  if (c.window < 1) throw std::runtime_error("window must be >= 1");
  if (c.epochs < 1) throw std::runtime_error("epochs must be >= 1");
  if (c.min_count < 0) throw std::runtime_error("min_count must be >= 0");
  if (c.negative_samples < 0) throw std::runtime_error("negative_samples must be >= 0");
  if (!(c.alpha_end > 0.0) || !(c.alpha_end <= c.alpha_start))
    throw std::runtime_error("alpha range must satisfy 0 < alpha_end <= alpha_start");
}

std::optional<int> Vocabulary::lookup(const std::string& token) const {
  auto it = index.find(token);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

namespace {

void build_noise_cdf(Vocabulary& vocab) {
  vocab.noise_cdf.resize(vocab.frequencies.size());
  double total = 0.0;
  for (std::size_t i = 0; i < vocab.frequencies.size(); ++i) {
    total += std::pow(static_cast<double>(vocab.frequencies[i]), 0.75);
    vocab.noise_cdf[i] = total;
  }
  for (double& v : vocab.noise_cdf) v /= total;
}

}  // namespace

Vocabulary build_vocabulary(const std::vector<TokenSequence>& corpus, int min_count) {
  if (corpus.empty()) throw std::runtime_error("empty corpus");
  // First-appearance order keeps indices independent of hash iteration.
  std::vector<std::string> order;
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& doc : corpus)
    for (const auto& token : doc.tokens) {
      auto [it, inserted] = counts.emplace(token, 0);
      if (inserted) order.push_back(token);
      ++it->second;
    }
  Vocabulary vocab;
  for (const auto& token : order) {
    const std::uint64_t freq = counts[token];
    if (freq < static_cast<std::uint64_t>(min_count)) continue;
    vocab.index.emplace(token, vocab.size());
    vocab.tokens.push_back(token);
    vocab.frequencies.push_back(freq);
  }
  if (vocab.tokens.empty()) throw std::runtime_error("empty vocabulary");
  build_noise_cdf(vocab);
  return vocab;
}

std::vector<float> EmbeddingModel::doc_vector(const std::string& doc_id) const {
  auto it = doc_index.find(doc_id);
  if (it == doc_index.end()) throw std::runtime_error("unknown doc id: " + doc_id);
  const std::size_t dim = static_cast<std::size_t>(config.dim);
  const std::size_t off = static_cast<std::size_t>(it->second) * dim;
  return std::vector<float>(doc_vectors.begin() + off, doc_vectors.begin() + off + dim);
}

namespace {

// mt19937_64 output mapped to [0,1) directly; distribution classes are not
// bit-stable across standard library implementations.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_noise(const Vocabulary& vocab, std::mt19937_64& rng) {
  const double u = next_uniform(rng);
  auto it = std::lower_bound(vocab.noise_cdf.begin(), vocab.noise_cdf.end(), u);
  if (it == vocab.noise_cdf.end()) --it;
  return static_cast<int>(it - vocab.noise_cdf.begin());
}

void check_finite(const std::vector<float>& m, const char* name) {
  for (float v : m)
    if (!std::isfinite(v))
      throw std::runtime_error(std::string("non-finite value in ") + name + " during training");
}

}  // namespace

EmbeddingModel train(const std::vector<TokenSequence>& corpus, const EmbeddingConfig& config) {
  validate_config(config);
  EmbeddingModel model;
  model.config = config;
  model.vocab = build_vocabulary(corpus, config.min_count);

  const int dim = config.dim;
  const int vocab_size = model.vocab.size();
  for (const auto& doc : corpus) {
    if (model.doc_index.count(doc.doc_id))
      throw std::runtime_error("duplicate doc id: " + doc.doc_id);
    model.doc_index.emplace(doc.doc_id, static_cast<int>(model.doc_ids.size()));
    model.doc_ids.push_back(doc.doc_id);
  }
  const int doc_count = static_cast<int>(model.doc_ids.size());

  std::mt19937_64 rng(config.seed);
  auto init_matrix = [&](std::vector<float>& m, int rows) {
    m.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(dim));
    const double scale = 1.0 / dim;
    for (float& v : m) v = static_cast<float>((next_uniform(rng) - 0.5) * scale);
  };
  init_matrix(model.word_vectors, vocab_size);
  init_matrix(model.context_weights, vocab_size);
  init_matrix(model.doc_vectors, doc_count);

  // Map every document to vocab indices once; -1 marks filtered tokens so
  // the window is still measured in original positions.
  std::vector<std::vector<int>> docs(corpus.size());
  std::size_t total_positions = 0;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    docs[d].reserve(corpus[d].tokens.size());
    for (const auto& token : corpus[d].tokens) {
      auto idx = model.vocab.lookup(token);
      docs[d].push_back(idx ? *idx : -1);
      if (idx) ++total_positions;
    }
  }
  const std::size_t total_updates =
      total_positions * static_cast<std::size_t>(config.epochs);

  auto word_row = [&](int w) { return model.word_vectors.data() + static_cast<std::size_t>(w) * dim; };
  auto ctx_row = [&](int w) { return model.context_weights.data() + static_cast<std::size_t>(w) * dim; };
  auto doc_row = [&](int d) { return model.doc_vectors.data() + static_cast<std::size_t>(d) * dim; };

  std::size_t update = 0;
  std::vector<const float*> inputs;
  std::vector<float*> input_rows;
  std::vector<const float*> noise_rows;
  std::vector<int> noise_ids;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const auto& doc = docs[d];
      const int len = static_cast<int>(doc.size());
      for (int i = 0; i < len; ++i) {
        const int target = doc[static_cast<std::size_t>(i)];
        if (target < 0) continue;

        inputs.clear();
        input_rows.clear();
        const int lo = std::max(0, i - config.window);
        const int hi = std::min(len - 1, i + config.window);
        for (int j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const int w = doc[static_cast<std::size_t>(j)];
          if (w < 0) continue;
          inputs.push_back(word_row(w));
          input_rows.push_back(word_row(w));
        }
        inputs.push_back(doc_row(static_cast<int>(d)));
        input_rows.push_back(doc_row(static_cast<int>(d)));

        noise_rows.clear();
        noise_ids.clear();
        for (int k = 0; k < config.negative_samples; ++k) {
          int w = -1;
          for (int attempt = 0; attempt < 10; ++attempt) {
            w = sample_noise(model.vocab, rng);
            if (w != target) break;
            w = -1;
          }
          if (w < 0) continue;  // could not avoid the target (tiny vocab)
          noise_ids.push_back(w);
          noise_rows.push_back(ctx_row(w));
        }

        const double frac = total_updates > 1
                                ? static_cast<double>(update) / static_cast<double>(total_updates)
                                : 0.0;
        const float lr = static_cast<float>(
            config.alpha_start - (config.alpha_start - config.alpha_end) * frac);
        ++update;

        const auto grad = pvdm::step_gradients<float>(inputs, ctx_row(target), noise_rows, dim);
        float* trow = ctx_row(target);
        for (int x = 0; x < dim; ++x) trow[x] -= lr * grad.target[x];
        for (std::size_t k = 0; k < noise_ids.size(); ++k) {
          float* nrow = ctx_row(noise_ids[static_cast<std::size_t>(k)]);
          for (int x = 0; x < dim; ++x) nrow[x] -= lr * grad.noise[k][x];
        }
        for (float* row : input_rows)
          for (int x = 0; x < dim; ++x) row[x] -= lr * grad.input[x];
      }
    }
    check_finite(model.word_vectors, "word vectors");
    check_finite(model.context_weights, "context weights");
    check_finite(model.doc_vectors, "doc vectors");
  }
  return model;
}

namespace {

constexpr char kMagic[4] = {'P', 'V', 'D', 'M'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T read_pod(std::istream& in, const std::filesystem::path& path) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("truncated model file: " + path.string());
  return value;
}

void write_string(std::ostream& out, const std::string& s) {
  write_pod(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in, const std::filesystem::path& path) {
  const auto len = read_pod<std::uint32_t>(in, path);
  std::string s(len, '\0');
  in.read(s.data(), static_cast<std::streamsize>(len));
  if (!in) throw std::runtime_error("truncated model file: " + path.string());
  return s;
}

void write_matrix(std::ostream& out, const std::vector<float>& m) {
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(m.size() * sizeof(float)));
}

void read_matrix(std::istream& in, std::vector<float>& m, std::size_t count,
                 const std::filesystem::path& path) {
  m.resize(count);
  in.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(count * sizeof(float)));
  if (!in) throw std::runtime_error("truncated model file: " + path.string());
}

}  // namespace

void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(kMagic, 4);
  write_pod(out, kVersion);
  const auto& c = model.config;
  write_pod(out, static_cast<std::int32_t>(c.dim));
  write_pod(out, static_cast<std::int32_t>(c.window));
  write_pod(out, static_cast<std::int32_t>(c.min_count));
  write_pod(out, static_cast<std::int32_t>(c.epochs));
  write_pod(out, static_cast<std::int32_t>(c.negative_samples));
  write_pod(out, c.alpha_start);
  write_pod(out, c.alpha_end);
  write_pod(out, c.seed);
  write_pod(out, static_cast<std::uint8_t>(c.deterministic ? 1 : 0));

  write_pod(out, static_cast<std::uint32_t>(model.vocab.size()));
  for (int i = 0; i < model.vocab.size(); ++i) {
    write_string(out, model.vocab.tokens[static_cast<std::size_t>(i)]);
    write_pod(out, model.vocab.frequencies[static_cast<std::size_t>(i)]);
  }
  write_pod(out, static_cast<std::uint32_t>(model.doc_ids.size()));
  for (const auto& id : model.doc_ids) write_string(out, id);

  write_matrix(out, model.word_vectors);
  write_matrix(out, model.context_weights);
  write_matrix(out, model.doc_vectors);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

EmbeddingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not a model file: " + path.string());
  const auto version = read_pod<std::uint32_t>(in, path);
  if (version != kVersion)
    throw std::runtime_error("unsupported version " + std::to_string(version) + " in " +
                             path.string());
  EmbeddingModel model;
  auto& c = model.config;
  c.dim = read_pod<std::int32_t>(in, path);
  c.window = read_pod<std::int32_t>(in, path);
  c.min_count = read_pod<std::int32_t>(in, path);
  c.epochs = read_pod<std::int32_t>(in, path);
  c.negative_samples = read_pod<std::int32_t>(in, path);
  c.alpha_start = read_pod<double>(in, path);
  c.alpha_end = read_pod<double>(in, path);
  c.seed = read_pod<std::uint64_t>(in, path);
  c.deterministic = read_pod<std::uint8_t>(in, path) != 0;
  validate_config(c);

  const auto vocab_size = read_pod<std::uint32_t>(in, path);
  for (std::uint32_t i = 0; i < vocab_size; ++i) {
    std::string token = read_string(in, path);
    const auto freq = read_pod<std::uint64_t>(in, path);
    model.vocab.index.emplace(token, static_cast<int>(i));
    model.vocab.tokens.push_back(std::move(token));
    model.vocab.frequencies.push_back(freq);
  }
  build_noise_cdf(model.vocab);

  const auto doc_count = read_pod<std::uint32_t>(in, path);
  for (std::uint32_t i = 0; i < doc_count; ++i) {
    std::string id = read_string(in, path);
    model.doc_index.emplace(id, static_cast<int>(i));
    model.doc_ids.push_back(std::move(id));
  }

  const std::size_t dim = static_cast<std::size_t>(c.dim);
  read_matrix(in, model.word_vectors, vocab_size * dim, path);
  read_matrix(in, model.context_weights, vocab_size * dim, path);
  read_matrix(in, model.doc_vectors, doc_count * dim, path);
  return model;
}

}  // namespace patchrank
