// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "leosim/rng.hpp"

using leosim::RandomStream;

TEST_CASE("streams with the same seed replay the same sequence") {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("substreams are independent of parent consumption") {
  RandomStream parent(7);
  RandomStream child_before = parent.substream(3);
  for (int i = 0; i < 10; ++i) parent.uniform();
  RandomStream child_after = parent.substream(3);
  for (int i = 0; i < 10; ++i)
    CHECK(child_before.next_u64() == child_after.next_u64());
}

TEST_CASE("different substream tags decorrelate") {
  RandomStream parent(7);
  RandomStream a = parent.substream(1);
  RandomStream b = parent.substream(2);
  int matches = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_u64() == b.next_u64()) ++matches;
  CHECK(matches == 0);
}

TEST_CASE("uniform stays in [0, 1) and has the right mean") {
  RandomStream rs(123);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rs.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("normal draws match the target moments") {
  RandomStream rs(99);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rs.normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("poisson draws match the target mean at small and large lambda") {
  RandomStream rs(5);
  for (const double lambda : {3.0, 200.0}) {
    const int n = 20000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(rs.poisson(lambda));
    const double mean = sum / n;
    CHECK(std::abs(mean - lambda) < 0.05 * lambda);
  }
  CHECK(rs.poisson(0.0) == 0);
  CHECK(rs.poisson(-1.0) == 0);
}

TEST_CASE("uniform_int covers the whole range") {
  RandomStream rs(11);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) hits[rs.uniform_int(7)] += 1;
  for (int h : hits) CHECK(h > 800);
}
