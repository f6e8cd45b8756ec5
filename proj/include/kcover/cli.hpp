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

#ifndef KCOVER_CLI_HPP_
#define KCOVER_CLI_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcover/algorithms.hpp"
#include "kcover/experiments.hpp"
#include "kcover/instance.hpp"
#include "kcover/io.hpp"
#include "kcover/manifest.hpp"
#include "kcover/netsim.hpp"
#include "kcover/oracle.hpp"
#include "kcover/version.hpp"

namespace kcover::cli {

// Exit codes, one per failure class. Listed in --help and the README.
inline constexpr int kExitOk = 0;          // success
inline constexpr int kExitError = 1;       // unexpected runtime failure
inline constexpr int kExitUsage = 2;       // bad flags, unknown algorithm, bad parameters
inline constexpr int kExitParseError = 3;  // malformed input file
inline constexpr int kExitBudget = 4;      // oracle node budget exceeded
inline constexpr int kExitValidation = 5;  // validate found a violated invariant

// Raised by `validate` when a partition or report contradicts its instance.
class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Collects output files for one run and emits the manifest next to them.
// Machine-readable data goes to files; standard output stays human-sized.
class RunContext {
 public:
  RunContext(std::string subcommand, std::string out_dir)
      : out_dir_(std::move(out_dir)), start_(std::chrono::steady_clock::now()) {
    manifest_.subcommand = std::move(subcommand);
    std::filesystem::create_directories(out_dir_);
  }

  RunManifest& manifest() { return manifest_; }

  std::string path_of(const std::string& name) const {
    return (std::filesystem::path(out_dir_) / name).string();
  }

  void write_output(const std::string& name, const std::string& contents) {
    const std::string path = path_of(name);
    write_text_file(path, contents);
    manifest_.outputs.push_back(path);
  }

  void add_input(const std::string& path) { manifest_.inputs.push_back(path); }

  void finish() {
    manifest_.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    std::ostringstream buffer;
    write_manifest(manifest_, buffer);
    write_text_file(path_of("manifest.json"), buffer.str());
  }

 private:
  std::string out_dir_;
  RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

struct GenerateArgs {
  std::uint64_t areas = 0, subsets = 0, edges = 0;
  std::uint32_t k = 2;
  std::uint64_t seed = 0;
  std::string out = ".";
};

struct PartitionArgs {
  std::string instance;
  std::string alg = "cgreedy";
  std::uint64_t seed = 0;
  std::string out = ".";
};

struct OracleArgs {
  std::string instance;
  std::uint64_t budget = 0;  // 0 = default guard (n <= 12, k <= 4)
  std::string out = ".";
};

struct NetsimArgs {
  std::string deployment;
  std::uint32_t k = 0;  // 0 = use the k from the deployment file
  std::string out = ".";
};

struct ExperimentArgs {
  std::string study;
  std::uint64_t seed = 0;
  std::uint32_t trials = 0;  // 0 = per-study default
  double threshold = 0.8;
  std::uint64_t battery = 100;
  std::string out = ".";
};

struct ValidateArgs {
  std::string instance;
  std::string partition;
  std::string report;  // optional
};

struct ReplayArgs {
  std::string manifest;
  std::string out = ".";
};

inline std::string render_instance(const ProblemInstance& instance) {
  std::ostringstream buffer;
  write_instance(instance, buffer);
  return buffer.str();
}

inline std::string render_partition(const Partition& partition) {
  std::ostringstream buffer;
  write_partition(partition, buffer);
  return buffer.str();
}

inline void run_generate(const GenerateArgs& args, std::ostream& out) {
  RunContext ctx("generate", args.out);
  ctx.manifest().seed = args.seed;
  ctx.manifest().parameters = {{"areas", args.areas}, {"subsets", args.subsets},
                               {"edges", args.edges}, {"k", args.k},
                               {"seed", args.seed},   {"out", args.out}};
  const ProblemInstance instance =
      generate_instance(static_cast<std::uint32_t>(args.areas),
                        static_cast<std::uint32_t>(args.subsets), args.edges, args.k, args.seed);
  ctx.write_output("instance.kcover", render_instance(instance));
  ctx.finish();
  out << "generated instance: |S|=" << instance.num_areas() << " n=" << instance.num_subsets()
      << " |E|=" << instance.edge_count() << " k=" << instance.k() << " -> "
      << ctx.path_of("instance.kcover") << "\n";
}

inline std::string format_ratio(std::uint64_t objective, std::uint64_t bound) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f",
                bound == 0 ? 0.0 : static_cast<double>(objective) / static_cast<double>(bound));
  return buffer;
}

inline void run_partition(const PartitionArgs& args, std::ostream& out) {
  RunContext ctx("partition", args.out);
  ctx.manifest().seed = args.seed;
  ctx.manifest().parameters = {{"instance", args.instance},
                               {"alg", args.alg},
                               {"seed", args.seed},
                               {"out", args.out}};
  ctx.add_input(args.instance);

  const ProblemInstance instance = read_instance_file(args.instance);
  const Algorithm alg = *algorithm_from_name(args.alg);  // names checked by CLI11
  const AlgorithmOutcome outcome = run_algorithm(alg, instance, args.seed);
  const CoverageReport report = evaluate(instance, outcome.partition);
  const UpperBound bound = upper_bound(instance);

  ctx.write_output("partition.kpart", render_partition(outcome.partition));
  std::ostringstream report_buffer;
  write_report(report, report_buffer);
  ctx.write_output("report.json", report_buffer.str());
  ctx.finish();

  out << args.alg << " objective " << report.objective << " of bound " << bound.value << " ("
      << format_ratio(report.objective, bound.value) << ")"
      << ", min fair ratio " << report.min_fair_ratio << ", size range ratio "
      << report.size_range_ratio << "\n";
}

inline void run_oracle(const OracleArgs& args, std::ostream& out) {
  RunContext ctx("oracle", args.out);
  ctx.manifest().parameters = {{"instance", args.instance},
                               {"budget", args.budget},
                               {"out", args.out}};
  ctx.add_input(args.instance);

  const ProblemInstance instance = read_instance_file(args.instance);
  const OracleResult result = exact_optimum(instance, args.budget);

  const nlohmann::json data = {
      {"optimum_objective", result.optimum_objective},
      {"optimum_maxmin", result.optimum_maxmin},
      {"objective_witness", result.objective_witness.assignment()},
      {"maxmin_witness", result.maxmin_witness.assignment()},
      {"nodes_explored", result.nodes_explored},
      {"opt_bound", upper_bound(instance).value}};
  ctx.write_output("oracle.json", data.dump(2) + "\n");
  ctx.finish();

  out << "optimum objective " << result.optimum_objective << ", optimum max-min "
      << result.optimum_maxmin << " (" << result.nodes_explored << " nodes)\n";
}

inline void run_netsim(const NetsimArgs& args, std::ostream& out) {
  RunContext ctx("netsim", args.out);
  ctx.manifest().parameters = {{"deployment", args.deployment}, {"k", args.k}, {"out", args.out}};
  ctx.add_input(args.deployment);

  const LoadedDeployment loaded = read_deployment_file(args.deployment);
  const std::uint32_t k = args.k == 0 ? loaded.k : args.k;
  const NetsimResult result = simulate(loaded.deployment, SimConfig{k});

  const ProblemInstance derived = derive_instance(loaded.deployment, k);
  const AlgorithmOutcome sequential = distributed_greedy_partition(derived);
  const bool equivalent = sequential.partition == result.outcome.partition;

  ctx.write_output("partition.kpart", render_partition(result.outcome.partition));

  nlohmann::json trace = nlohmann::json::array();
  for (const TraceEntry& entry : result.outcome.trace)
    trace.push_back({{"subset", entry.subset},
                     {"cover", entry.cover},
                     {"score", entry.score},
                     {"tied", entry.tied}});
  nlohmann::json missed = nlohmann::json::array();
  for (const MissedDecision& miss : result.missed)
    missed.push_back({{"sender", miss.sender}, {"neighbor", miss.neighbor}, {"slot", miss.slot}});
  const nlohmann::json data = {{"k", k},
                               {"broadcast_radii", result.deployment.broadcast_radii},
                               {"hello_count", result.hellos.size()},
                               {"decision_count", result.decisions.size()},
                               {"trace", trace},
                               {"missed_decisions", missed},
                               {"matches_sequential_greedy", equivalent}};
  ctx.write_output("netsim_trace.json", data.dump(2) + "\n");
  ctx.finish();

  out << "netsim: " << loaded.deployment.num_sensors() << " sensors, "
      << result.hellos.size() + result.decisions.size() << " messages, "
      << result.missed.size() << " missed decisions, "
      << (equivalent ? "matches" : "DIVERGES from") << " sequential distributed greedy\n";
}

inline void run_experiment(const ExperimentArgs& args, std::ostream& out) {
  RunContext ctx("experiment", args.out);
  ctx.manifest().seed = args.seed;
  ctx.manifest().parameters = {{"study", args.study},       {"seed", args.seed},
                               {"trials", args.trials},     {"threshold", args.threshold},
                               {"battery", args.battery},   {"out", args.out}};

  std::ostringstream table;
  std::string filename;
  if (args.study == "table2") {
    const std::uint32_t trials = args.trials == 0 ? 10 : args.trials;
    const auto rows = table2_sweep(kTable2Grid, 1000, 10, trials, args.seed);
    write_sweep_tsv(rows, table);
    filename = "table2.tsv";
    out << "table2: " << rows.size() << " rows, " << trials << " trials each\n";
  } else if (args.study == "longevity") {
    const std::uint32_t seeds = args.trials == 0 ? 10 : args.trials;
    const auto rows = longevity_density_sweep(100, 120, 400, 4, seeds, args.battery,
                                              args.threshold, args.seed);
    write_longevity_tsv(rows, table);
    filename = "longevity.tsv";
    out << "longevity: " << rows.size() << " rows over 4 density levels\n";
  } else if (args.study == "fairness") {
    const std::uint32_t trials = args.trials == 0 ? 100 : args.trials;
    const ProblemInstance instance = generate_instance(200, 100, 2000, 10, args.seed);
    const auto curves = fairness_study(instance, trials, derive_seed(args.seed, 1));
    write_fairness_tsv(curves, table);
    filename = "fairness.tsv";
    for (const FairnessCurve& curve : curves)
      out << "fairness " << algorithm_name(curve.algorithm) << ": min ratio "
          << curve.min_ratio << ", mean ratio " << curve.mean_ratio << "\n";
  } else if (args.study == "coverrange") {
    const std::uint32_t trials = args.trials == 0 ? 10 : args.trials;
    const auto cells = cover_range_study(kDefaultCoverRangeGrid, trials, args.seed);
    write_cover_range_tsv(cells, table);
    filename = "coverrange.tsv";
    out << "coverrange: " << cells.size() << " grid cells, " << trials << " trials each\n";
  }
  ctx.write_output(filename, table.str());
  ctx.finish();
  out << "wrote " << ctx.path_of(filename) << "\n";
}

inline void run_validate(const ValidateArgs& args, std::ostream& out) {
  const ProblemInstance instance = read_instance_file(args.instance);
  const Partition partition = read_partition_file(args.partition);
  if (partition.num_subsets() != instance.num_subsets() || partition.k() != instance.k())
    throw ValidationFailure("partition dimensions (n=" + std::to_string(partition.num_subsets()) +
                            ", k=" + std::to_string(partition.k()) +
                            ") do not match the instance");

  const CoverageReport computed = evaluate(instance, partition);

  // Re-check the report invariants from first principles.
  const auto counts = instance.area_subset_counts();
  std::uint64_t sum_lv = 0, sum_covers = 0;
  for (std::uint32_t v = 0; v < instance.num_areas(); ++v) {
    const std::uint32_t l_v = computed.per_area_cover_count[v];
    if (l_v > std::min(instance.k(), counts[v]))
      throw ValidationFailure("l_v exceeds min(k, N_v) for area " + std::to_string(v + 1));
    sum_lv += l_v;
  }
  for (std::uint64_t size : computed.cover_sizes) sum_covers += size;
  if (sum_lv != computed.objective || sum_covers != computed.objective)
    throw ValidationFailure("objective disagrees with per-area / per-cover recounts");
  if (computed.objective > upper_bound(instance).value)
    throw ValidationFailure("objective exceeds min(k|S|, |E|)");

  if (!args.report.empty()) {
    std::ifstream in(args.report);
    if (!in) throw std::runtime_error("cannot open " + args.report);
    const CoverageReport stored = read_report(in, args.report);
    if (!(stored == computed))
      throw ValidationFailure("stored report does not match the recomputed one");
  }
  out << "validate: OK (objective " << computed.objective << ")\n";
}

inline void run_replay(const ReplayArgs& args, std::ostream& out, std::ostream& err);

inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{std::string("kcover ") + kVersion +
               " - SET K-COVER partitioning toolkit\n"
               "exit codes: 0 ok, 1 error, 2 usage, 3 malformed file, 4 oracle budget, "
               "5 validation failure"};
  app.require_subcommand(1);

  GenerateArgs generate_args;
  auto* generate = app.add_subcommand("generate", "Generate a random problem instance");
  generate->add_option("--areas", generate_args.areas, "Number of areas |S|")
      ->required()
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{0xFFFFFFFF}));
  generate->add_option("--subsets", generate_args.subsets, "Number of subsets n")
      ->required()
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{0xFFFFFFFF}));
  generate->add_option("--edges", generate_args.edges, "Number of membership edges |E|")
      ->required();
  generate->add_option("--k", generate_args.k, "Number of covers (>= 2)")->required();
  generate->add_option("--seed", generate_args.seed, "64-bit generator seed");
  generate->add_option("--out", generate_args.out, "Output directory");

  PartitionArgs partition_args;
  auto* partition = app.add_subcommand("partition", "Partition an instance into covers");
  partition->add_option("--instance", partition_args.instance, "Instance file")->required();
  partition->add_option("--alg", partition_args.alg, "Algorithm: random, dgreedy or cgreedy")
      ->check(CLI::IsMember({"random", "dgreedy", "cgreedy"}));
  partition->add_option("--seed", partition_args.seed, "Seed (random algorithm only)");
  partition->add_option("--out", partition_args.out, "Output directory");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Exact optimum by exhaustive search");
  oracle->add_option("--instance", oracle_args.instance, "Instance file")->required();
  oracle->add_option("--budget", oracle_args.budget,
                     "Node budget (0 = default guard n<=12, k<=4)");
  oracle->add_option("--out", oracle_args.out, "Output directory");

  NetsimArgs netsim_args;
  auto* netsim = app.add_subcommand("netsim", "Message-passing protocol simulation");
  netsim->add_option("--deployment", netsim_args.deployment, "Deployment file")->required();
  netsim->add_option("--k", netsim_args.k, "Override the k from the deployment file");
  netsim->add_option("--out", netsim_args.out, "Output directory");

  ExperimentArgs experiment_args;
  auto* experiment = app.add_subcommand("experiment", "Run a simulation study");
  experiment
      ->add_option("--study", experiment_args.study,
                   "Study: table2, longevity, fairness or coverrange")
      ->required()
      ->check(CLI::IsMember({"table2", "longevity", "fairness", "coverrange"}));
  experiment->add_option("--seed", experiment_args.seed, "Master seed");
  experiment->add_option("--trials", experiment_args.trials,
                         "Instances or runs per cell (0 = study default)");
  experiment->add_option("--threshold", experiment_args.threshold,
                         "Coverage threshold for longevity (default 0.8)");
  experiment->add_option("--battery", experiment_args.battery,
                         "Battery activations per sensor (default 100)");
  experiment->add_option("--out", experiment_args.out, "Output directory");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Re-check a partition/report pair");
  validate->add_option("--instance", validate_args.instance, "Instance file")->required();
  validate->add_option("--partition", validate_args.partition, "Partition file")->required();
  validate->add_option("--report", validate_args.report, "Report file (optional)");

  ReplayArgs replay_args;
  auto* replay = app.add_subcommand("replay", "Re-run a recorded manifest");
  replay->add_option("--manifest", replay_args.manifest, "Manifest file")->required();
  replay->add_option("--out", replay_args.out, "Output directory for the replayed run");

  generate->callback([&] { run_generate(generate_args, out); });
  partition->callback([&] { run_partition(partition_args, out); });
  oracle->callback([&] { run_oracle(oracle_args, out); });
  netsim->callback([&] { run_netsim(netsim_args, out); });
  experiment->callback([&] { run_experiment(experiment_args, out); });
  validate->callback([&] { run_validate(validate_args, out); });
  replay->callback([&] { run_replay(replay_args, out, err); });

  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return kExitOk;
}

// Rebuilds the recorded command line (with --out redirected) and runs it.
inline void run_replay(const ReplayArgs& args, std::ostream& out, std::ostream& err) {
  std::ifstream in(args.manifest);
  if (!in) throw std::runtime_error("cannot open " + args.manifest);
  const RunManifest manifest = read_manifest(in, args.manifest);
  if (manifest.subcommand == "replay")
    throw std::runtime_error("refusing to replay a replay manifest");

  std::vector<std::string> argv{manifest.subcommand};
  for (const auto& [key, value] : manifest.parameters.items()) {
    if (key == "out") continue;
    argv.push_back("--" + key);
    if (value.is_string())
      argv.push_back(value.get<std::string>());
    else
      argv.push_back(value.dump());
  }
  argv.push_back("--out");
  argv.push_back(args.out);

  const int code = dispatch(argv, out, err);
  if (code != kExitOk)
    throw std::runtime_error("replayed subcommand failed with exit code " + std::to_string(code));
  out << "replayed " << manifest.subcommand << " into " << args.out << "\n";
}

}  // namespace detail

// Entry point shared by the kcover binary and the test suites. `args` holds
// the arguments without the program name.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  try {
    return detail::dispatch(std::move(args), out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ValidationFailure& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace kcover::cli

#endif  // KCOVER_CLI_HPP_
