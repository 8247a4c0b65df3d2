#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "xmorph/rng.hpp"

using namespace xmorph;

TEST_CASE("same seed reproduces the exact stream") {
  det_rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  det_rng c(42), d(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(c.uniform() == d.uniform());
    CHECK(c.normal() == d.normal());
  }
}

TEST_CASE("different seeds diverge") {
  det_rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("uniform stays in the half open unit interval") {
  det_rng rng(7);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("uniform with bounds covers the range") {
  det_rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform(-0.1, 0.1);
    REQUIRE(u >= -0.1);
    REQUIRE(u < 0.1);
  }
}

TEST_CASE("uniform_index is unbiased enough and in range") {
  det_rng rng(3);
  std::vector<std::size_t> counts(10, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const std::size_t k = rng.uniform_index(10);
    REQUIRE(k < 10);
    counts[k] += 1;
  }
  for (auto c : counts) {
    CHECK(c > n / 10 * 0.9);
    CHECK(c < n / 10 * 1.1);
  }
  CHECK(rng.uniform_index(1) == 0);
}

TEST_CASE("normal has roughly standard moments") {
  det_rng rng(5);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    REQUIRE(std::isfinite(x));
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("shuffle permutes without losing elements") {
  det_rng rng(9);
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);
  auto orig = v;
  rng.shuffle(v);
  CHECK(v != orig);  // 100! permutations; identity is effectively impossible
  std::sort(v.begin(), v.end());
  CHECK(v == orig);
}

TEST_CASE("shuffle with the same seed is identical") {
  std::vector<int> a(50), b(50);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), 0);
  det_rng r1(13), r2(13);
  r1.shuffle(a);
  r2.shuffle(b);
  CHECK(a == b);
}
