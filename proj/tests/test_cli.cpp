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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "kcover/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = kcover::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

// Unique scratch directory per test case, removed on destruction.
struct TempDir {
  fs::path path;

  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("kcover_test_" + tag + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }

  std::string sub(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) { return kcover::read_text_file(path); }

}  // namespace

TEST_CASE("generate, partition and validate round trip with exit code 0") {
  TempDir tmp("roundtrip");
  const auto gen = run_cli({"generate", "--areas", "30", "--subsets", "25", "--edges", "120",
                            "--k", "4", "--seed", "9", "--out", tmp.sub("gen")});
  REQUIRE(gen.code == kcover::cli::kExitOk);
  const std::string instance = tmp.sub("gen") + "/instance.kcover";
  REQUIRE(fs::exists(instance));
  REQUIRE(fs::exists(tmp.sub("gen") + "/manifest.json"));

  for (const std::string alg : {"random", "dgreedy", "cgreedy"}) {
    const std::string out_dir = tmp.sub("part_" + alg);
    const auto part = run_cli({"partition", "--instance", instance, "--alg", alg, "--seed",
                               "3", "--out", out_dir});
    REQUIRE(part.code == kcover::cli::kExitOk);
    const auto check = run_cli({"validate", "--instance", instance, "--partition",
                                out_dir + "/partition.kpart", "--report",
                                out_dir + "/report.json"});
    REQUIRE(check.code == kcover::cli::kExitOk);
    REQUIRE(check.out.find("OK") != std::string::npos);
  }
}

TEST_CASE("random partitions are reproducible for a fixed seed") {
  TempDir tmp("determinism");
  run_cli({"generate", "--areas", "20", "--subsets", "15", "--edges", "60", "--k", "3",
           "--seed", "5", "--out", tmp.sub("gen")});
  const std::string instance = tmp.sub("gen") + "/instance.kcover";

  const auto a = run_cli({"partition", "--instance", instance, "--alg", "random", "--seed",
                          "1", "--out", tmp.sub("a")});
  const auto b = run_cli({"partition", "--instance", instance, "--alg", "random", "--seed",
                          "1", "--out", tmp.sub("b")});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(slurp(tmp.sub("a") + "/partition.kpart") == slurp(tmp.sub("b") + "/partition.kpart"));
  CHECK(slurp(tmp.sub("a") + "/report.json") == slurp(tmp.sub("b") + "/report.json"));
}

TEST_CASE("manifests replay to byte-identical outputs") {
  TempDir tmp("replay");
  run_cli({"generate", "--areas", "25", "--subsets", "20", "--edges", "90", "--k", "3",
           "--seed", "77", "--out", tmp.sub("gen")});
  const auto replayed = run_cli({"replay", "--manifest", tmp.sub("gen") + "/manifest.json",
                                 "--out", tmp.sub("gen2")});
  REQUIRE(replayed.code == 0);
  CHECK(slurp(tmp.sub("gen") + "/instance.kcover") ==
        slurp(tmp.sub("gen2") + "/instance.kcover"));

  const std::string instance = tmp.sub("gen") + "/instance.kcover";
  run_cli({"partition", "--instance", instance, "--alg", "cgreedy", "--out", tmp.sub("p")});
  const auto p2 = run_cli({"replay", "--manifest", tmp.sub("p") + "/manifest.json", "--out",
                           tmp.sub("p2")});
  REQUIRE(p2.code == 0);
  CHECK(slurp(tmp.sub("p") + "/partition.kpart") == slurp(tmp.sub("p2") + "/partition.kpart"));
  CHECK(slurp(tmp.sub("p") + "/report.json") == slurp(tmp.sub("p2") + "/report.json"));
}

TEST_CASE("oracle subcommand writes optima and respects the default guard") {
  TempDir tmp("oracle");
  run_cli({"generate", "--areas", "6", "--subsets", "8", "--edges", "20", "--k", "3",
           "--seed", "2", "--out", tmp.sub("gen")});
  const std::string instance = tmp.sub("gen") + "/instance.kcover";
  const auto result = run_cli({"oracle", "--instance", instance, "--out", tmp.sub("oracle")});
  REQUIRE(result.code == 0);
  REQUIRE(fs::exists(tmp.sub("oracle") + "/oracle.json"));

  // n = 13 exceeds the default guard; the exit code is the documented 4.
  run_cli({"generate", "--areas", "4", "--subsets", "13", "--edges", "20", "--k", "2",
           "--seed", "2", "--out", tmp.sub("gen13")});
  const auto refused = run_cli({"oracle", "--instance", tmp.sub("gen13") + "/instance.kcover",
                                "--out", tmp.sub("oracle13")});
  CHECK(refused.code == kcover::cli::kExitBudget);
  CHECK(refused.err.find("budget") != std::string::npos);

  // An explicit budget overrides the shape guard.
  const auto allowed = run_cli({"oracle", "--instance", tmp.sub("gen13") + "/instance.kcover",
                                "--budget", "1000000", "--out", tmp.sub("oracle13b")});
  CHECK(allowed.code == kcover::cli::kExitOk);
}

TEST_CASE("unknown algorithm and malformed files use distinct exit codes") {
  TempDir tmp("errors");
  run_cli({"generate", "--areas", "5", "--subsets", "5", "--edges", "10", "--k", "2",
           "--seed", "1", "--out", tmp.sub("gen")});
  const std::string instance = tmp.sub("gen") + "/instance.kcover";

  const auto unknown = run_cli({"partition", "--instance", instance, "--alg", "simplex",
                                "--out", tmp.sub("x")});
  CHECK(unknown.code == kcover::cli::kExitUsage);

  kcover::write_text_file(tmp.sub("broken.kcover"), "kcover 1\n2 1 2\n1 1 0\n");
  const auto malformed = run_cli({"partition", "--instance", tmp.sub("broken.kcover"),
                                  "--alg", "cgreedy", "--out", tmp.sub("y")});
  CHECK(malformed.code == kcover::cli::kExitParseError);
  CHECK(malformed.err.find(":3:") != std::string::npos);

  const auto missing = run_cli({"partition", "--instance", tmp.sub("nope.kcover"), "--alg",
                                "cgreedy", "--out", tmp.sub("z")});
  CHECK(missing.code == kcover::cli::kExitError);
}

TEST_CASE("validate rejects a tampered report with exit code 5") {
  TempDir tmp("tamper");
  run_cli({"generate", "--areas", "12", "--subsets", "10", "--edges", "40", "--k", "3",
           "--seed", "4", "--out", tmp.sub("gen")});
  const std::string instance = tmp.sub("gen") + "/instance.kcover";
  run_cli({"partition", "--instance", instance, "--alg", "dgreedy", "--out", tmp.sub("p")});

  auto report = slurp(tmp.sub("p") + "/report.json");
  const auto pos = report.find("\"objective\": ");
  REQUIRE(pos != std::string::npos);
  report.replace(pos, 13, "\"objective\": 9");
  kcover::write_text_file(tmp.sub("p") + "/report.json", report);

  const auto check = run_cli({"validate", "--instance", instance, "--partition",
                              tmp.sub("p") + "/partition.kpart", "--report",
                              tmp.sub("p") + "/report.json"});
  CHECK(check.code == kcover::cli::kExitValidation);
}

TEST_CASE("netsim subcommand reports equivalence with the sequential greedy") {
  TempDir tmp("netsim");
  kcover::Deployment d;
  kcover::Rng rng(3141);
  for (int j = 0; j < 15; ++j) {
    d.sensor_positions.push_back({rng.next_double(), rng.next_double()});
    d.sensing_radii.push_back(0.4);
  }
  for (int v = 0; v < 25; ++v)
    d.area_positions.push_back({rng.next_double(), rng.next_double()});
  std::ostringstream file;
  kcover::write_deployment(d, 3, file);
  kcover::write_text_file(tmp.sub("net.kdeploy"), file.str());

  const auto result = run_cli({"netsim", "--deployment", tmp.sub("net.kdeploy"), "--out",
                               tmp.sub("sim")});
  REQUIRE(result.code == 0);
  CHECK(result.out.find("matches sequential distributed greedy") != std::string::npos);

  const auto sequential = kcover::distributed_greedy_partition(derive_instance(d, 3));
  std::ifstream in(tmp.sub("sim") + "/partition.kpart");
  CHECK(kcover::read_partition(in) == sequential.partition);

  // --k overrides the k stored in the deployment file.
  const auto k5 = run_cli({"netsim", "--deployment", tmp.sub("net.kdeploy"), "--k", "5",
                           "--out", tmp.sub("sim5")});
  REQUIRE(k5.code == 0);
  std::ifstream in5(tmp.sub("sim5") + "/partition.kpart");
  CHECK(kcover::read_partition(in5).k() == 5);
}

TEST_CASE("generate rejects k = 1 with the usage exit code") {
  TempDir tmp("badk");
  const auto result = run_cli({"generate", "--areas", "5", "--subsets", "5", "--edges", "5",
                               "--k", "1", "--seed", "1", "--out", tmp.sub("g")});
  CHECK(result.code == kcover::cli::kExitUsage);
}

TEST_CASE("experiment subcommand writes the study table and replays") {
  TempDir tmp("exp");
  const auto result = run_cli({"experiment", "--study", "fairness", "--seed", "12",
                               "--trials", "5", "--out", tmp.sub("e")});
  REQUIRE(result.code == 0);
  REQUIRE(fs::exists(tmp.sub("e") + "/fairness.tsv"));

  const auto replayed = run_cli({"replay", "--manifest", tmp.sub("e") + "/manifest.json",
                                 "--out", tmp.sub("e2")});
  REQUIRE(replayed.code == 0);
  CHECK(slurp(tmp.sub("e") + "/fairness.tsv") == slurp(tmp.sub("e2") + "/fairness.tsv"));
}

TEST_CASE("cgreedy on the headline configuration lands in the expected band") {
  TempDir tmp("headline");
  const auto gen = run_cli({"generate", "--areas", "1000", "--subsets", "1000", "--edges",
                            "5000", "--k", "10", "--seed", "2024", "--out", tmp.sub("g")});
  REQUIRE(gen.code == 0);
  const auto part = run_cli({"partition", "--instance", tmp.sub("g") + "/instance.kcover",
                             "--alg", "cgreedy", "--out", tmp.sub("p")});
  REQUIRE(part.code == 0);

  std::ifstream in(tmp.sub("p") + "/report.json");
  const auto report = kcover::read_report(in);
  CHECK(report.objective >= 4687);  // 4832 +/- 3%
  CHECK(report.objective <= 4977);
}

TEST_CASE("help and missing subcommand behave like a normal CLI") {
  CHECK(run_cli({"--help"}).code == kcover::cli::kExitOk);
  CHECK(run_cli({}).code == kcover::cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == kcover::cli::kExitUsage);
}
