#include "cham/rng.hpp"

#include <set>

#include "doctest.h"

using namespace cham;

TEST_CASE("same seed yields the same stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
  Rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 32; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("uniform stays in [0,1)") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("below covers its range and nothing else") {
  Rng rng(9);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 400; ++i) seen.insert(rng.below(7));
  CHECK(seen.size() == 7);
  CHECK(*seen.rbegin() == 6);
  CHECK_THROWS(rng.below(0));
}

TEST_CASE("derived seeds separate by label") {
  const auto a = derive_seed(5, "mask.train");
  const auto b = derive_seed(5, "mask.test");
  const auto c = derive_seed(6, "mask.train");
  CHECK(a != b);
  CHECK(a != c);
  CHECK(derive_seed(5, "mask.train") == a);
}

TEST_CASE("shuffle is deterministic per seed") {
  std::vector<int> v1{1, 2, 3, 4, 5, 6, 7, 8};
  auto v2 = v1;
  Rng a(3), b(3);
  a.shuffle(v1);
  b.shuffle(v2);
  CHECK(v1 == v2);
}
