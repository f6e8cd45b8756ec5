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

#include <sstream>
#include <string>

#include <doctest.h>

#include "kcover/io.hpp"
#include "kcover/netsim.hpp"
#include "support.hpp"

using kcover::ParseError;
using kcover::Partition;
using kcover::ProblemInstance;

namespace {

ProblemInstance parse(const std::string& text) {
  std::istringstream in(text);
  return kcover::read_instance(in, "test");
}

}  // namespace

TEST_CASE("minimal instance file parses") {
  const auto instance = parse("kcover 1\n1 1 2\n1 1 1\n");
  CHECK(instance.num_areas() == 1);
  CHECK(instance.num_subsets() == 1);
  CHECK(instance.k() == 2);
  CHECK(instance.edge_count() == 1);
}

TEST_CASE("comments and blank lines are ignored") {
  const auto instance = parse("# a comment\nkcover 1\n\n2 1 2\n# another\n1 2 1 2\n");
  CHECK(instance.edge_count() == 2);
}

TEST_CASE("area id 0 is a parse error naming the line") {
  try {
    parse("kcover 1\n2 1 2\n1 1 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("test:3") != std::string::npos);
  }
}

TEST_CASE("malformed instance files are rejected") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("kcover 2\n1 1 2\n1 1 1\n"), ParseError);       // bad version
  CHECK_THROWS_AS(parse("kcover 1\n1 1\n"), ParseError);                // short dims
  CHECK_THROWS_AS(parse("kcover 1\n1 1 1\n1 1 1\n"), ParseError);       // k < 2
  CHECK_THROWS_AS(parse("kcover 1\n1 2 2\n1 1 1\n"), ParseError);       // missing subset
  CHECK_THROWS_AS(parse("kcover 1\n1 1 2\n2 1 1\n"), ParseError);       // wrong subset id
  CHECK_THROWS_AS(parse("kcover 1\n1 1 2\n1 2 1\n"), ParseError);       // count mismatch
  CHECK_THROWS_AS(parse("kcover 1\n2 1 2\n1 2 2 1\n"), ParseError);     // not ascending
  CHECK_THROWS_AS(parse("kcover 1\n2 1 2\n1 2 1 1\n"), ParseError);     // duplicate edge
  CHECK_THROWS_AS(parse("kcover 1\n1 1 2\n1 1 1\nextra\n"), ParseError);
  CHECK_THROWS_AS(parse("kcover 1\n1 1 2\n1 1 x\n"), ParseError);       // non-numeric id
  CHECK_THROWS_AS(parse("kcover 1\n1 1 x\n1 1 1\n"), ParseError);       // non-numeric dims
  CHECK_THROWS_AS(parse("kcover 1\n1 999999999999 2\n1 1 1\n"), ParseError);  // absurd header
}

TEST_CASE("instance round-trips byte-for-byte") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto instance = kcover::testing::fuzz_instance(seed);
    std::ostringstream first;
    kcover::write_instance(instance, first);
    std::istringstream in(first.str());
    const auto reread = kcover::read_instance(in);
    CHECK(reread == instance);
    std::ostringstream second;
    kcover::write_instance(reread, second);
    CHECK(first.str() == second.str());
  }
}

TEST_CASE("partition round-trips and validates") {
  const Partition partition(3, {1, 3, 2, 3});
  std::ostringstream out;
  kcover::write_partition(partition, out);
  std::istringstream in(out.str());
  CHECK(kcover::read_partition(in) == partition);

  std::istringstream bad("kpart 1\n2 2\n1 3\n2 1\n");
  CHECK_THROWS_AS(kcover::read_partition(bad), ParseError);  // cover out of range
}

TEST_CASE("report JSON round-trips exactly") {
  const auto instance = kcover::generate_instance(9, 7, 20, 3, 12);
  const auto report =
      evaluate(instance, kcover::testing::random_partition_of(instance, 3));
  std::ostringstream out;
  kcover::write_report(report, out);
  std::istringstream in(out.str());
  CHECK(kcover::read_report(in) == report);
}

TEST_CASE("deployment files round-trip") {
  kcover::Deployment d;
  d.sensor_positions = {{0.0, 0.0}, {1.5, -2.25}};
  d.sensing_radii = {1.0, 0.625};
  d.area_positions = {{0.5, 0.5}, {1.0, -2.0}, {3.0, 3.0}};

  std::ostringstream out;
  kcover::write_deployment(d, 4, out);
  std::istringstream in(out.str());
  const auto loaded = kcover::read_deployment(in);
  CHECK(loaded.k == 4);
  CHECK(loaded.deployment.sensor_positions == d.sensor_positions);
  CHECK(loaded.deployment.sensing_radii == d.sensing_radii);
  CHECK(loaded.deployment.area_positions == d.area_positions);

  std::istringstream bad("kdeploy 1\n1 1 2\n1 0 0\n1 0 0\n");  // sensor line too short
  CHECK_THROWS_AS(kcover::read_deployment(bad), ParseError);
}
