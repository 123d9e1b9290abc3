#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "riskminer/rng.hpp"

using riskminer::Rng;

TEST_CASE("same seed gives the same stream, different seeds diverge") {
  Rng a(42), b(42), c(43);
  bool all_equal = true;
  bool any_differ = false;
  for (int i = 0; i < 64; ++i) {
    auto va = a.next_u64();
    all_equal = all_equal && va == b.next_u64();
    any_differ = any_differ || va != c.next_u64();
  }
  CHECK(all_equal);
  CHECK(any_differ);
}

TEST_CASE("split is independent of parent consumption") {
  Rng parent(7);
  Rng fresh(7);
  for (int i = 0; i < 100; ++i) parent.next_u64();  // drain the parent
  Rng from_drained = parent.split(3);
  Rng from_fresh = fresh.split(3);
  for (int i = 0; i < 32; ++i) CHECK(from_drained.next_u64() == from_fresh.next_u64());
}

TEST_CASE("distinct streams from one seed do not collide") {
  Rng root(99);
  Rng s0 = root.split(0);
  Rng s1 = root.split(1);
  CHECK(s0.next_u64() != s1.next_u64());
}

TEST_CASE("uniform stays in [0,1) and is roughly flat") {
  Rng rng(1);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("below covers the whole range without bias toward the edges") {
  Rng rng(2);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[rng.below(7)];
  for (int count : counts) {
    CHECK(count > n / 7 - 800);
    CHECK(count < n / 7 + 800);
  }
}

TEST_CASE("normal has the requested moments, roughly") {
  Rng rng(3);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = rng.normal(2.0, 3.0);
    sum += x;
    sq += x * x;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::sqrt(var) == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("shuffle permutes deterministically") {
  std::vector<int> v(20);
  std::iota(v.begin(), v.end(), 0);
  std::vector<int> w = v;
  Rng(5).shuffle(v);
  Rng(5).shuffle(w);
  CHECK(v == w);
  CHECK(v != std::vector<int>(v.size(), 0));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expect(20);
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(sorted == expect);  // still a permutation
  Rng other(6);
  std::vector<int> u = expect;
  other.shuffle(u);
  CHECK(u != v);
}
