#include "cham/text.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace cham {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto u = static_cast<unsigned char>(ch);
    if (std::isalnum(u)) {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::optional<int> Vocabulary::id(const std::string& word) const {
  const auto it = id_of.find(word);
  if (it == id_of.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& corpus, int min_count) {
  if (min_count < 1) throw std::invalid_argument("build_vocab: min_count must be >= 1");

  std::unordered_map<std::string, std::int64_t> freq;
  for (const auto& sentence : corpus)
    for (const auto& tok : sentence) ++freq[tok];

  std::vector<std::pair<std::string, std::int64_t>> entries(freq.begin(), freq.end());
  std::erase_if(entries, [&](const auto& e) { return e.second < min_count; });
  if (entries.empty()) throw std::runtime_error("build_vocab: no token reaches min_count");

  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  Vocabulary vocab;
  vocab.words.reserve(entries.size());
  vocab.counts.reserve(entries.size());
  for (auto& [word, count] : entries) {
    vocab.id_of.emplace(word, static_cast<int>(vocab.words.size()));
    vocab.words.push_back(std::move(word));
    vocab.counts.push_back(count);
  }
  return vocab;
}

}  // namespace cham
