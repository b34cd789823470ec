#include "cham/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cham {

double accuracy(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size())
    throw std::invalid_argument("accuracy: length mismatch");
  if (predictions.empty()) throw std::invalid_argument("accuracy: empty input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (predictions[i] == labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double auroc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("auroc: length mismatch");
  if (scores.empty()) throw std::invalid_argument("auroc: empty input");

  std::size_t n_pos = 0, n_neg = 0;
  for (int label : labels) {
    if (label == 1) ++n_pos;
    else if (label == 0) ++n_neg;
    else throw std::invalid_argument("auroc: labels must be 0 or 1");
  }
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("auroc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of positive ranks with tie groups sharing their average rank.
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = static_cast<double>(i + 1 + j) / 2.0;  // ranks i+1 .. j
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] == 1) rank_sum += avg_rank;
    i = j;
  }
  const double n_pos_d = static_cast<double>(n_pos);
  return (rank_sum - n_pos_d * (n_pos_d + 1.0) / 2.0) / (n_pos_d * static_cast<double>(n_neg));
}

double f1_macro(std::span<const int> predictions, std::span<const int> labels, int num_classes) {
  if (predictions.size() != labels.size())
    throw std::invalid_argument("f1_macro: length mismatch");
  if (predictions.empty()) throw std::invalid_argument("f1_macro: empty input");
  if (num_classes < 1) throw std::invalid_argument("f1_macro: num_classes must be >= 1");

  std::vector<std::int64_t> tp(num_classes), fp(num_classes), fn(num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int p = predictions[i], y = labels[i];
    if (p < 0 || p >= num_classes || y < 0 || y >= num_classes)
      throw std::invalid_argument("f1_macro: class index out of range");
    if (p == y) ++tp[p];
    else {
      ++fp[p];
      ++fn[y];
    }
  }

  double total = 0.0;
  for (int c = 0; c < num_classes; ++c) {
    const double precision = tp[c] + fp[c] > 0 ? static_cast<double>(tp[c]) / (tp[c] + fp[c]) : 0.0;
    const double recall = tp[c] + fn[c] > 0 ? static_cast<double>(tp[c]) / (tp[c] + fn[c]) : 0.0;
    total += precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  }
  return total / num_classes;
}

}  // namespace cham
