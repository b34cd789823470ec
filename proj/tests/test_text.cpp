#include "cham/text.hpp"

#include "doctest.h"

using namespace cham;

TEST_CASE("tokenize lowercases and splits on non-alphanumerics") {
  CHECK(tokenize("Extol craft scissors") ==
        std::vector<std::string>{"extol", "craft", "scissors"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("Ice-Cream 101!") == std::vector<std::string>{"ice", "cream", "101"});
  CHECK(tokenize("  \t\n ") == std::vector<std::string>{});
  CHECK(tokenize("a--b") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("build_vocab orders by count then lexicographically") {
  const std::vector<std::vector<std::string>> corpus{{"a", "b", "a"}};
  const auto vocab = build_vocab(corpus, 1);
  CHECK(vocab.size() == 2);
  CHECK(vocab.id("a") == 0);
  CHECK(vocab.id("b") == 1);
  CHECK(vocab.counts[0] == 2);
  CHECK(vocab.counts[1] == 1);
}

TEST_CASE("build_vocab applies the min_count threshold") {
  const std::vector<std::vector<std::string>> corpus{{"a", "b", "a"}};
  const auto vocab = build_vocab(corpus, 2);
  CHECK(vocab.size() == 1);
  CHECK(vocab.id("a") == 0);
  CHECK_FALSE(vocab.contains("b"));
}

TEST_CASE("build_vocab breaks count ties lexicographically") {
  const std::vector<std::vector<std::string>> corpus{{"x", "y"}, {"y", "z"}};
  const auto vocab = build_vocab(corpus, 1);
  CHECK(vocab.id("y") == 0);
  CHECK(vocab.id("x") == 1);
  CHECK(vocab.id("z") == 2);
}

TEST_CASE("build_vocab rejects an empty result") {
  CHECK_THROWS(build_vocab({{"a"}}, 2));
  CHECK_THROWS(build_vocab({{"a"}}, 0));
}

TEST_CASE("vocabulary ids and words are mutually inverse") {
  const std::vector<std::vector<std::string>> corpus{{"p", "q", "r", "q", "p", "p"}};
  const auto vocab = build_vocab(corpus, 1);
  for (int i = 0; i < vocab.size(); ++i) CHECK(vocab.id(vocab.words[i]) == i);
}
