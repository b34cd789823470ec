#include "cham/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cham/rng.hpp"

namespace cham {

void SkipGramConfig::validate() const {
  if (dim <= 0 || dim % 3 != 0)
    throw std::invalid_argument("SkipGramConfig: dim must be positive and divisible by 3");
  if (window < 1) throw std::invalid_argument("SkipGramConfig: window must be >= 1");
  if (negatives < 1) throw std::invalid_argument("SkipGramConfig: negatives must be >= 1");
  if (epochs < 1) throw std::invalid_argument("SkipGramConfig: epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("SkipGramConfig: learning_rate must be > 0");
  if (min_count < 1) throw std::invalid_argument("SkipGramConfig: min_count must be >= 1");
}

std::span<const double> EmbeddingTable::row(int r) const {
  return {vectors.data() + static_cast<std::size_t>(r) * dim, static_cast<std::size_t>(dim)};
}

std::optional<std::span<const double>> EmbeddingTable::lookup(const std::string& word) const {
  const auto it = row_of.find(word);
  if (it == row_of.end()) return std::nullopt;
  return row(it->second);
}

namespace {

double sigmoid(double x) {
  if (x > 30.0) return 1.0;
  if (x < -30.0) return 0.0;
  return 1.0 / (1.0 + std::exp(-x));
}

// Round-trip through "%.9g" so a value survives the text format unchanged.
double quantize9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

int sample_from_cumulative(Rng& rng, const std::vector<double>& cumulative) {
  const double u = rng.uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const auto idx = static_cast<int>(it - cumulative.begin());
  return std::min(idx, static_cast<int>(cumulative.size()) - 1);
}

constexpr double kMinLearningRate = 1e-4;

}  // namespace

EmbeddingTable train_skipgram(const std::vector<std::vector<std::string>>& corpus,
                              const Vocabulary& vocab, const SkipGramConfig& cfg) {
  cfg.validate();
  const int n_words = vocab.size();
  const int dim = cfg.dim;

  std::vector<std::vector<int>> sentences;
  sentences.reserve(corpus.size());
  std::int64_t centers_per_epoch = 0;
  for (const auto& sentence : corpus) {
    std::vector<int> ids;
    ids.reserve(sentence.size());
    for (const auto& tok : sentence) {
      const auto id = vocab.id(tok);
      if (!id) throw std::invalid_argument("train_skipgram: token not in vocabulary: " + tok);
      ids.push_back(*id);
    }
    centers_per_epoch += static_cast<std::int64_t>(ids.size());
    sentences.push_back(std::move(ids));
  }
  const std::int64_t total_centers = centers_per_epoch * cfg.epochs;

  // Negative-sampling distribution: unigram counts to the 0.75 power.
  std::vector<double> cumulative(n_words);
  double acc = 0.0;
  for (int i = 0; i < n_words; ++i) {
    acc += std::pow(static_cast<double>(vocab.counts[i]), 0.75);
    cumulative[i] = acc;
  }

  Rng rng(cfg.seed);
  const std::size_t table_size = static_cast<std::size_t>(n_words) * dim;
  std::vector<double> input(table_size);
  std::vector<double> output(table_size, 0.0);
  const double bound = 0.5 / dim;
  for (auto& v : input) v = rng.uniform(-bound, bound);

  std::vector<double> accum(dim);
  std::int64_t processed = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (const auto& ids : sentences) {
      const auto len = static_cast<std::ptrdiff_t>(ids.size());
      for (std::ptrdiff_t pos = 0; pos < len; ++pos) {
        const double progress =
            total_centers > 0 ? static_cast<double>(processed) / static_cast<double>(total_centers) : 0.0;
        const double alpha = cfg.learning_rate + (kMinLearningRate - cfg.learning_rate) * progress;
        ++processed;

        const int center = ids[pos];
        double* center_vec = input.data() + static_cast<std::size_t>(center) * dim;
        const auto span = static_cast<std::ptrdiff_t>(1 + rng.below(static_cast<std::uint64_t>(cfg.window)));

        for (std::ptrdiff_t off = -span; off <= span; ++off) {
          if (off == 0) continue;
          const std::ptrdiff_t cpos = pos + off;
          if (cpos < 0 || cpos >= len) continue;
          const int context = ids[cpos];

          std::fill(accum.begin(), accum.end(), 0.0);
          for (int k = 0; k <= cfg.negatives; ++k) {
            int target;
            double label;
            if (k == 0) {
              target = context;
              label = 1.0;
            } else {
              target = sample_from_cumulative(rng, cumulative);
              if (target == context) continue;
              label = 0.0;
            }
            double* target_vec = output.data() + static_cast<std::size_t>(target) * dim;
            double dot = 0.0;
            for (int d = 0; d < dim; ++d) dot += center_vec[d] * target_vec[d];
            const double g = (label - sigmoid(dot)) * alpha;
            for (int d = 0; d < dim; ++d) accum[d] += g * target_vec[d];
            for (int d = 0; d < dim; ++d) target_vec[d] += g * center_vec[d];
          }
          for (int d = 0; d < dim; ++d) center_vec[d] += accum[d];
        }
      }
    }
  }

  EmbeddingTable table;
  table.dim = dim;
  table.words = vocab.words;
  table.vectors.resize(table_size);
  for (std::size_t i = 0; i < table_size; ++i) table.vectors[i] = quantize9(input[i]);
  for (int i = 0; i < n_words; ++i) table.row_of.emplace(vocab.words[i], i);

  const auto [lo, hi] = std::minmax_element(table.vectors.begin(), table.vectors.end());
  table.global_min = table.vectors.empty() ? 0.0 : *lo;
  table.global_max = table.vectors.empty() ? 0.0 : *hi;
  return table;
}

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_embeddings: cannot open " + path.string());

  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out << ' ' << buf;
  };

  out << "CHAM-EMB v1 " << table.size() << ' ' << table.dim;
  put(table.global_min);
  put(table.global_max);
  out << '\n';
  for (std::size_t r = 0; r < table.size(); ++r) {
    out << table.words[r];
    for (double v : table.row(static_cast<int>(r))) put(v);
    out << '\n';
  }
  if (!out) throw std::runtime_error("save_embeddings: write failed for " + path.string());
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_embeddings: cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_embeddings: empty file " + path.string());
  std::istringstream header(line);
  std::string magic, version;
  std::size_t vocab_size = 0;
  EmbeddingTable table;
  header >> magic >> version >> vocab_size >> table.dim >> table.global_min >> table.global_max;
  if (!header || magic != "CHAM-EMB" || version != "v1")
    throw std::runtime_error("load_embeddings: bad header in " + path.string());
  if (table.dim <= 0 || table.dim % 3 != 0)
    throw std::runtime_error("load_embeddings: invalid dim in " + path.string());

  table.words.reserve(vocab_size);
  table.vectors.reserve(vocab_size * table.dim);
  for (std::size_t r = 0; r < vocab_size; ++r) {
    if (!std::getline(in, line))
      throw std::runtime_error("load_embeddings: truncated file at row " + std::to_string(r + 1));
    std::istringstream row(line);
    std::string word;
    row >> word;
    if (word.empty())
      throw std::runtime_error("load_embeddings: missing word at row " + std::to_string(r + 1));
    for (int d = 0; d < table.dim; ++d) {
      double v;
      if (!(row >> v))
        throw std::runtime_error("load_embeddings: malformed components for word " + word);
      table.vectors.push_back(v);
    }
    if (!table.row_of.emplace(word, static_cast<int>(r)).second)
      throw std::runtime_error("load_embeddings: duplicate word " + word);
    table.words.push_back(std::move(word));
  }
  for (double v : table.vectors) {
    if (v < table.global_min || v > table.global_max)
      throw std::runtime_error("load_embeddings: component outside recorded range in " + path.string());
  }
  return table;
}

}  // namespace cham
