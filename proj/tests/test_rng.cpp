#include <doctest.h>

#include <cmath>
#include <vector>

#include "hmpc/rng.hpp"

using hmpc::Rng;

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derived streams do not depend on parent consumption") {
  Rng parent(7);
  const Rng before = parent.derive(3);
  for (int i = 0; i < 100; ++i) parent.next_u64();
  const Rng after = parent.derive(3);
  CHECK(before.seed() == after.seed());
}

TEST_CASE("distinct keys give distinct streams") {
  const Rng root(99);
  Rng a = root.derive(0);
  Rng b = root.derive(1);
  Rng c = root.derive(0, 1);
  Rng d = root.derive(1, 0);
  CHECK(a.next_u64() != b.next_u64());
  CHECK(c.next_u64() != d.next_u64());
}

TEST_CASE("uniform01 stays in [0,1) and is roughly uniform") {
  Rng rng(5);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("uniform_index covers its range") {
  Rng rng(11);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 50000; ++i) ++counts[rng.uniform_index(5)];
  for (int c : counts) CHECK(c > 9000);
}

TEST_CASE("geometric: p = 1 always yields 1") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(rng.geometric(1.0) == 1);
}

TEST_CASE("geometric: invalid p throws") {
  Rng rng(1);
  CHECK_THROWS_AS(rng.geometric(0.0), std::invalid_argument);
  CHECK_THROWS_AS(rng.geometric(-0.1), std::invalid_argument);
}

TEST_CASE("geometric mean matches 1/p") {
  Rng rng(123);
  for (double p : {0.9, 0.5, 0.2}) {
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += rng.geometric(p);
    const double sd = std::sqrt(1.0 - p) / p;
    CHECK(std::abs(sum / n - 1.0 / p) < 4.0 * sd / std::sqrt(n));
  }
}
