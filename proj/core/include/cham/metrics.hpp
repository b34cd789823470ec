#pragma once

#include <span>

namespace cham {

// Fraction of exact matches.
double accuracy(std::span<const int> predictions, std::span<const int> labels);

// Mann-Whitney AUROC: (#(pos>neg) + 0.5 * #ties) / (#pos * #neg), computed
// via average ranks. Labels are 0/1 and both classes must be present.
double auroc(std::span<const double> scores, std::span<const int> labels);

// Unweighted mean over classes of 2PR/(P+R); a class with P+R == 0 scores 0.
double f1_macro(std::span<const int> predictions, std::span<const int> labels, int num_classes);

}  // namespace cham
