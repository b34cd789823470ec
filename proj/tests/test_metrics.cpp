#include "cham/metrics.hpp"

#include <vector>

#include "cham/rng.hpp"
#include "doctest.h"

using namespace cham;

namespace {

// Independent oracle: count every positive/negative pair directly.
double auroc_brute_force(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0, ties = 0.0;
  std::size_t n_pos = 0, n_neg = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1) continue;
    ++n_pos;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j] != 0) continue;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) ties += 1.0;
    }
  }
  for (int label : labels)
    if (label == 0) ++n_neg;
  return (wins + 0.5 * ties) / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

}  // namespace

TEST_CASE("accuracy counts exact matches") {
  const std::vector<int> labels{0, 1, 0, 1};
  CHECK(accuracy(labels, labels) == 1.0);
  CHECK(accuracy(std::vector<int>{0, 1, 1, 0}, labels) == 0.5);
  CHECK(accuracy(std::vector<int>{1, 0, 1, 0}, labels) == 0.0);
  CHECK_THROWS(accuracy(std::vector<int>{0}, labels));
  CHECK_THROWS(accuracy(std::vector<int>{}, std::vector<int>{}));
}

TEST_CASE("auroc on the hand-counted example") {
  const std::vector<double> scores{0.1, 0.4, 0.35, 0.8};
  const std::vector<int> labels{0, 0, 1, 1};
  // pairs: (0.35,0.1) win, (0.35,0.4) loss, (0.8,0.1) win, (0.8,0.4) win
  CHECK(auroc(scores, labels) == 0.75);
}

TEST_CASE("auroc extremes") {
  CHECK(auroc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, std::vector<int>{0, 0, 1, 1}) == 1.0);
  CHECK(auroc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, std::vector<int>{0, 1, 0, 1}) == 0.5);
  CHECK(auroc(std::vector<double>{0.9, 0.8, 0.1, 0.2}, std::vector<int>{0, 0, 1, 1}) == 0.0);
}

TEST_CASE("auroc rejects degenerate inputs") {
  CHECK_THROWS(auroc(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}));
  CHECK_THROWS(auroc(std::vector<double>{0.1, 0.2}, std::vector<int>{0, 0}));
  CHECK_THROWS(auroc(std::vector<double>{0.1}, std::vector<int>{0, 1}));
  CHECK_THROWS(auroc(std::vector<double>{0.1, 0.2}, std::vector<int>{0, 2}));
}

TEST_CASE("auroc equals brute-force pair counting on randomized cases") {
  Rng rng(314);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(2 + rng.below(99));
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    // coarse score grid on some trials forces plenty of ties
    const bool coarse = trial % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = coarse ? static_cast<double>(rng.below(5)) / 4.0 : rng.uniform();
      labels[i] = static_cast<int>(rng.below(2));
    }
    labels[0] = 0;  // both classes present
    labels[n - 1] = 1;
    CHECK(auroc(scores, labels) == auroc_brute_force(scores, labels));
  }
}

TEST_CASE("f1_macro on hand confusion matrices") {
  SUBCASE("perfect predictions") {
    const std::vector<int> labels{0, 1, 2, 0, 1, 2};
    CHECK(f1_macro(labels, labels, 3) == 1.0);
  }
  SUBCASE("all-zero predictions on a balanced binary task") {
    const std::vector<int> preds{0, 0, 0, 0};
    const std::vector<int> labels{0, 0, 1, 1};
    // class 0: P=0.5 R=1 -> F1=2/3; class 1: F1=0; macro = 1/3
    CHECK(f1_macro(preds, labels, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("nothing correct") {
    const std::vector<int> preds{1, 0};
    const std::vector<int> labels{0, 1};
    CHECK(f1_macro(preds, labels, 2) == 0.0);
  }
}

TEST_CASE("f1_macro validates class indices") {
  CHECK_THROWS(f1_macro(std::vector<int>{0, 3}, std::vector<int>{0, 1}, 2));
  CHECK_THROWS(f1_macro(std::vector<int>{0}, std::vector<int>{0, 1}, 2));
}
