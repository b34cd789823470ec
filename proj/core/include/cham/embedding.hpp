#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cham/text.hpp"

namespace cham {

struct SkipGramConfig {
  int dim = 36;  // divisible by 3 so component triples map onto RGB pixels
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;  // decays linearly to 1e-4 over training
  int min_count = 1;
  std::uint64_t seed = 1;

  void validate() const;
};

struct EmbeddingTable {
  int dim = 0;
  std::vector<std::string> words;  // row order is the training-time id order
  std::vector<double> vectors;     // row-major, words.size() x dim
  std::unordered_map<std::string, int> row_of;
  double global_min = 0.0;
  double global_max = 0.0;

  std::size_t size() const { return words.size(); }
  std::span<const double> row(int r) const;
  std::optional<std::span<const double>> lookup(const std::string& word) const;
};

// Skip-gram with negative sampling; single-threaded and deterministic in
// cfg.seed. Every corpus token must be present in `vocab` (pre-filter when
// min_count removed words). Final components are quantized to 9 significant
// digits so the text file format below round-trips them exactly.
EmbeddingTable train_skipgram(const std::vector<std::vector<std::string>>& corpus,
                              const Vocabulary& vocab, const SkipGramConfig& cfg);

// Text format: header line `CHAM-EMB v1 <vocab_size> <dim> <min> <max>`, then
// one `<word> <c1> ... <cdim>` line per word in id order, values with 9
// significant digits.
void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path);
EmbeddingTable load_embeddings(const std::filesystem::path& path);

}  // namespace cham
