// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "kcover/rng.hpp"

using kcover::Rng;

TEST_CASE("streams are a pure function of the seed") {
  Rng a(42), b(42), c(43);
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    all_equal = all_equal && x == b.next_u64();
    any_diff = any_diff || x != c.next_u64();
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("next_below stays in range and is roughly uniform") {
  Rng rng(7);
  constexpr std::uint64_t kBound = 6;
  constexpr int kDraws = 60000;
  std::vector<int> buckets(kBound, 0);
  for (int i = 0; i < kDraws; ++i) {
    const std::uint64_t draw = rng.next_below(kBound);
    REQUIRE(draw < kBound);
    ++buckets[draw];
  }
  const double expected = static_cast<double>(kDraws) / kBound;
  const double sigma = std::sqrt(expected * (1.0 - 1.0 / kBound));
  for (int count : buckets) CHECK(std::abs(count - expected) < 4 * sigma);
}

TEST_CASE("next_index covers 1..k") {
  Rng rng(11);
  bool seen[5] = {};
  for (int i = 0; i < 500; ++i) {
    const auto index = rng.next_index(5);
    REQUIRE(index >= 1);
    REQUIRE(index <= 5);
    seen[index - 1] = true;
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("derive_seed separates substreams") {
  const std::uint64_t master = 123456789;
  CHECK(kcover::derive_seed(master, 0) != kcover::derive_seed(master, 1));
  CHECK(kcover::derive_seed(master, 0) == kcover::derive_seed(master, 0));
  Rng a(kcover::derive_seed(master, 0));
  Rng b(kcover::derive_seed(master, 1));
  CHECK(a.next_u64() != b.next_u64());
}

TEST_CASE("next_double lies in [0, 1)") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.next_double();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
  }
}
