#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cham {

// Lowercases and splits on runs of non-alphanumeric characters; empty tokens
// are dropped and order is preserved.
std::vector<std::string> tokenize(std::string_view text);

struct Vocabulary {
  // Index equals word id; ordered by descending count, ties lexicographic.
  std::vector<std::string> words;
  std::vector<std::int64_t> counts;  // parallel to words
  std::unordered_map<std::string, int> id_of;

  int size() const { return static_cast<int>(words.size()); }
  std::optional<int> id(const std::string& word) const;
  bool contains(const std::string& word) const { return id(word).has_value(); }
};

// Keeps tokens whose corpus frequency is >= min_count. Throws if nothing
// survives the threshold.
Vocabulary build_vocab(const std::vector<std::vector<std::string>>& corpus, int min_count);

}  // namespace cham
