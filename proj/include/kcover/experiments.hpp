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

#ifndef KCOVER_EXPERIMENTS_HPP_
#define KCOVER_EXPERIMENTS_HPP_

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kcover/algorithms.hpp"
#include "kcover/instance.hpp"
#include "kcover/rng.hpp"

namespace kcover {

inline std::size_t algorithm_index(Algorithm alg) { return static_cast<std::size_t>(alg); }

namespace detail {

inline std::string format_fixed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto now = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(now - start).count();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Performance sweep (objective vs the min(k|S|, |E|) bound).

struct AlgorithmStats {
  double mean_objective = 0.0;
  double ratio_to_bound = 0.0;
  double mean_size_range_ratio = 0.0;
};

struct SweepRow {
  std::uint32_t num_areas = 0;
  std::uint32_t num_subsets = 0;
  std::uint64_t num_edges = 0;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  std::uint32_t trials = 0;
  std::uint64_t opt_bound = 0;
  std::array<AlgorithmStats, 3> algs{};
  double wall_ms = 0.0;
};

// The nine (n, |E|) cells used in the headline table; |S| = 1000 and k = 10.
inline const std::vector<std::pair<std::uint32_t, std::uint64_t>> kTable2Grid = {
    {1000, 5000}, {1000, 10000}, {1000, 20000}, {500, 5000},  {500, 10000},
    {500, 20000}, {2000, 5000},  {2000, 10000}, {2000, 20000}};

// For each (n, |E|) cell, generates `trials` fresh instances, runs all three
// algorithms on each, and averages the objectives. Randomized runs once per
// instance with its own derived seed.
inline std::vector<SweepRow> table2_sweep(
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& cells,
    std::uint32_t num_areas, std::uint32_t k, std::uint32_t trials, std::uint64_t seed) {
  std::vector<SweepRow> rows;
  rows.reserve(cells.size());
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    const auto [subsets, edges] = cells[cell];
    const std::uint64_t cell_seed = derive_seed(seed, cell);
    const auto start = std::chrono::steady_clock::now();

    SweepRow row;
    row.num_areas = num_areas;
    row.num_subsets = subsets;
    row.num_edges = edges;
    row.k = k;
    row.seed = seed;
    row.trials = trials;

    for (std::uint32_t trial = 0; trial < trials; ++trial) {
      const ProblemInstance instance = generate_instance(
          num_areas, subsets, edges, k, derive_seed(cell_seed, 2 * trial));
      row.opt_bound = upper_bound(instance).value;
      for (Algorithm alg : kAllAlgorithms) {
        const AlgorithmOutcome outcome =
            run_algorithm(alg, instance, derive_seed(cell_seed, 2 * trial + 1));
        const CoverageReport report = evaluate(instance, outcome.partition);
        auto& stats = row.algs[algorithm_index(alg)];
        stats.mean_objective += static_cast<double>(report.objective);
        stats.mean_size_range_ratio += report.size_range_ratio;
      }
    }
    for (auto& stats : row.algs) {
      stats.mean_objective /= trials;
      stats.mean_size_range_ratio /= trials;
      stats.ratio_to_bound = stats.mean_objective / static_cast<double>(row.opt_bound);
    }
    row.wall_ms = detail::elapsed_ms(start);
    rows.push_back(row);
  }
  return rows;
}

inline void write_sweep_tsv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "areas\tsubsets\tedges\tk\tseed\ttrials\topt_bound";
  for (Algorithm alg : kAllAlgorithms) {
    const std::string name = algorithm_name(alg);
    out << '\t' << name << "_objective\t" << name << "_ratio\t" << name << "_range_ratio";
  }
  out << '\n';
  for (const SweepRow& row : rows) {
    out << row.num_areas << '\t' << row.num_subsets << '\t' << row.num_edges << '\t' << row.k
        << '\t' << row.seed << '\t' << row.trials << '\t' << row.opt_bound;
    for (Algorithm alg : kAllAlgorithms) {
      const auto& stats = row.algs[algorithm_index(alg)];
      out << '\t' << detail::format_fixed(stats.mean_objective) << '\t'
          << detail::format_fixed(stats.ratio_to_bound) << '\t'
          << detail::format_fixed(stats.mean_size_range_ratio);
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Longevity: largest usable k and the round-robin battery simulation.

struct LongevityResult {
  std::uint32_t achieved_k = 1;   // largest k with objective > threshold * k * |S|
  bool meets_threshold = false;   // false: no k >= 2 qualified, achieved_k fell back to 1
  bool window_verified = false;   // sliding-window criterion held over the whole run
  std::uint64_t baseline_lifetime = 0;  // all-on slots until below threshold
  std::uint64_t lifetime_slots = 0;
  double ratio = 1.0;
  double burst_bonus = 1.0;
};

// Same membership for every candidate k; only the cover count varies.
using InstanceFamily = std::function<ProblemInstance(std::uint32_t)>;

inline InstanceFamily fixed_membership_family(ProblemInstance base) {
  return [base = std::move(base)](std::uint32_t k) {
    return ProblemInstance(base.num_areas(), k, base.membership());
  };
}

namespace detail {

// Distinct areas covered by each cover of the partition.
inline std::vector<std::vector<AreaId>> cover_area_sets(const ProblemInstance& instance,
                                                        const Partition& partition) {
  std::vector<std::vector<AreaId>> areas(partition.k());
  std::vector<std::uint32_t> stamp(instance.num_areas(), 0);
  for (CoverId i = 1; i <= partition.k(); ++i) {
    for (SubsetId j = 1; j <= instance.num_subsets(); ++j) {
      if (partition.cover_of(j) != i) continue;
      for (AreaId v : instance.subset(j)) {
        if (stamp[v - 1] != i) {
          stamp[v - 1] = i;
          areas[i - 1].push_back(v);
        }
      }
    }
  }
  return areas;
}

// Round-robin activation with per-sensor batteries of `battery` activations.
// Returns (slots survived, sliding-window criterion held for every full
// window). The run ends when the next scheduled cover has no battery left.
inline std::pair<std::uint64_t, bool> round_robin_run(
    const ProblemInstance& instance, const Partition& partition,
    const std::vector<std::vector<AreaId>>& cover_areas, std::uint64_t battery,
    double threshold) {
  const std::uint32_t k = partition.k();
  const double needed = threshold * instance.num_areas();

  std::vector<std::uint64_t> cover_battery(k, battery);
  std::vector<std::uint32_t> window_count(instance.num_areas(), 0);
  std::uint64_t covered_now = 0;
  std::vector<CoverId> window;  // covers active in the last k slots
  bool ok = true;

  std::uint64_t slot = 0;
  for (;;) {
    const CoverId active = static_cast<CoverId>(slot % k) + 1;
    if (cover_battery[active - 1] == 0) break;
    --cover_battery[active - 1];
    ++slot;

    window.push_back(active);
    for (AreaId v : cover_areas[active - 1])
      if (window_count[v - 1]++ == 0) ++covered_now;
    if (window.size() > k) {
      const CoverId leaving = window.front();
      window.erase(window.begin());
      for (AreaId v : cover_areas[leaving - 1])
        if (--window_count[v - 1] == 0) --covered_now;
    }
    if (window.size() == k && !(static_cast<double>(covered_now) > needed)) ok = false;
  }
  return {slot, ok};
}

}  // namespace detail

// Scans k >= 2 for the largest cover count whose partition still clears
// objective > threshold * k * |S|, then simulates the round-robin rotation
// with per-sensor batteries to confirm the sliding-window criterion and to
// price the lifetime against the all-on baseline.
inline LongevityResult longevity_search(const InstanceFamily& family, Algorithm alg,
                                        double threshold = 0.8, std::uint64_t battery = 100,
                                        double burst_bonus = 1.0, std::uint64_t seed = 0) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw ValidationError("coverage threshold must lie in (0, 1]");
  if (battery < 1) throw ValidationError("battery must be at least 1 activation");
  const ProblemInstance probe = family(2);
  const double denom = threshold * probe.num_areas();
  // objective <= |E| caps any k that can clear the threshold.
  const auto k_cap = static_cast<std::uint32_t>(
      denom > 0 ? static_cast<std::uint64_t>(static_cast<double>(probe.edge_count()) / denom)
                : probe.edge_count());

  LongevityResult result;
  result.burst_bonus = burst_bonus;

  std::uint32_t achieved = 0;
  for (std::uint32_t k = 2; k <= std::max<std::uint32_t>(k_cap, 2); ++k) {
    const ProblemInstance instance = family(k);
    const AlgorithmOutcome outcome = run_algorithm(alg, instance, derive_seed(seed, k));
    const CoverageReport report = evaluate(instance, outcome.partition);
    if (static_cast<double>(report.objective) >
        threshold * static_cast<double>(k) * instance.num_areas())
      achieved = k;
  }

  // Baseline: every sensor on every slot; batteries drain together.
  const ProblemInstance base = family(2);
  std::uint64_t coverable = 0;
  for (std::uint32_t n_v : base.area_subset_counts()) coverable += n_v >= 1;
  const bool baseline_ok = static_cast<double>(coverable) > threshold * base.num_areas();
  result.baseline_lifetime = baseline_ok ? battery : 0;

  if (achieved >= 2) {
    result.achieved_k = achieved;
    result.meets_threshold = true;
    const ProblemInstance instance = family(achieved);
    const AlgorithmOutcome outcome =
        run_algorithm(alg, instance, derive_seed(seed, achieved));
    const auto cover_areas = detail::cover_area_sets(instance, outcome.partition);
    const auto effective_battery = static_cast<std::uint64_t>(
        static_cast<double>(battery) * burst_bonus + 0.5);
    const auto [slots, ok] = detail::round_robin_run(
        instance, outcome.partition, cover_areas, std::max<std::uint64_t>(effective_battery, 1),
        threshold);
    result.lifetime_slots = slots;
    result.window_verified = ok;
  } else {
    result.achieved_k = 1;
    result.meets_threshold = false;
    result.window_verified = false;
    result.lifetime_slots = battery;  // fall back to running everything at once
  }
  result.ratio = result.baseline_lifetime > 0
                     ? static_cast<double>(result.lifetime_slots) /
                           static_cast<double>(result.baseline_lifetime)
                     : 1.0;
  return result;
}

struct LongevityRow {
  std::uint64_t num_edges = 0;
  std::uint32_t seed_index = 0;
  Algorithm alg = Algorithm::kRandomized;
  LongevityResult result;
};

// Density ladder: |S| and n fixed, |E| doubling per level, `seeds` instances
// per level, all three algorithms on each.
inline std::vector<LongevityRow> longevity_density_sweep(
    std::uint32_t num_areas, std::uint32_t num_subsets, std::uint64_t base_edges,
    std::uint32_t levels, std::uint32_t seeds, std::uint64_t battery, double threshold,
    std::uint64_t master_seed) {
  std::vector<LongevityRow> rows;
  for (std::uint32_t level = 0; level < levels; ++level) {
    const std::uint64_t edges = base_edges << level;
    for (std::uint32_t s = 0; s < seeds; ++s) {
      const std::uint64_t instance_seed = derive_seed(derive_seed(master_seed, s), level);
      const ProblemInstance base =
          generate_instance(num_areas, num_subsets, edges, 2, instance_seed);
      const InstanceFamily family = fixed_membership_family(base);
      for (Algorithm alg : kAllAlgorithms) {
        LongevityRow row;
        row.num_edges = edges;
        row.seed_index = s;
        row.alg = alg;
        row.result = longevity_search(family, alg, threshold, battery, 1.0,
                                      derive_seed(instance_seed, 9000 + algorithm_index(alg)));
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

inline void write_longevity_tsv(const std::vector<LongevityRow>& rows, std::ostream& out) {
  out << "edges\tseed_index\talgorithm\tachieved_k\tmeets_threshold\twindow_verified"
         "\tbaseline_lifetime\tlifetime_slots\tratio\n";
  for (const LongevityRow& row : rows) {
    out << row.num_edges << '\t' << row.seed_index << '\t' << algorithm_name(row.alg) << '\t'
        << row.result.achieved_k << '\t' << (row.result.meets_threshold ? 1 : 0) << '\t'
        << (row.result.window_verified ? 1 : 0) << '\t' << row.result.baseline_lifetime << '\t'
        << row.result.lifetime_slots << '\t' << detail::format_fixed(row.result.ratio) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Per-area fairness: (N_v, l_v / k) against the min(N_v / k, 1) reference.

struct FairnessPoint {
  AreaId area = 0;
  std::uint32_t n_v = 0;
  double lv_over_k = 0.0;
  double optimum_ref = 0.0;  // min(N_v / k, 1)
};

struct FairnessCurve {
  Algorithm algorithm = Algorithm::kRandomized;
  std::vector<FairnessPoint> points;  // areas with N_v >= 1 only
  double min_ratio = 1.0;             // min over areas of l_v / min(k, N_v)
  double mean_ratio = 1.0;
};

// Greedy curves come from their single deterministic run; the randomized
// curve averages l_v over `trials` independent runs.
inline std::array<FairnessCurve, 3> fairness_study(const ProblemInstance& instance,
                                                   std::uint32_t trials = 100,
                                                   std::uint64_t seed = 0) {
  const std::uint32_t k = instance.k();
  const auto counts = instance.area_subset_counts();

  const auto build_curve = [&](Algorithm alg, const std::vector<double>& mean_lv) {
    FairnessCurve curve;
    curve.algorithm = alg;
    double ratio_sum = 0.0;
    double ratio_min = 2.0;
    for (AreaId v = 1; v <= instance.num_areas(); ++v) {
      if (counts[v - 1] < 1) continue;  // ratio undefined for uncovered areas
      FairnessPoint point;
      point.area = v;
      point.n_v = counts[v - 1];
      point.lv_over_k = mean_lv[v - 1] / k;
      point.optimum_ref = std::min(static_cast<double>(point.n_v) / k, 1.0);
      curve.points.push_back(point);
      const double ratio = mean_lv[v - 1] / std::min(k, counts[v - 1]);
      ratio_sum += ratio;
      ratio_min = std::min(ratio_min, ratio);
    }
    curve.min_ratio = curve.points.empty() ? 1.0 : ratio_min;
    curve.mean_ratio = curve.points.empty() ? 1.0 : ratio_sum / curve.points.size();
    return curve;
  };

  std::array<FairnessCurve, 3> curves;
  std::vector<double> mean_lv(instance.num_areas(), 0.0);

  for (std::uint32_t t = 0; t < trials; ++t) {
    const auto outcome = randomized_partition(instance, derive_seed(seed, t));
    const auto report = evaluate(instance, outcome.partition);
    for (std::uint32_t v = 0; v < instance.num_areas(); ++v)
      mean_lv[v] += report.per_area_cover_count[v];
  }
  for (double& value : mean_lv) value /= trials;
  curves[algorithm_index(Algorithm::kRandomized)] =
      build_curve(Algorithm::kRandomized, mean_lv);

  for (Algorithm alg : {Algorithm::kDistributedGreedy, Algorithm::kCentralizedGreedy}) {
    const auto outcome = run_algorithm(alg, instance, 0);
    const auto report = evaluate(instance, outcome.partition);
    std::vector<double> lv(instance.num_areas());
    for (std::uint32_t v = 0; v < instance.num_areas(); ++v)
      lv[v] = report.per_area_cover_count[v];
    curves[algorithm_index(alg)] = build_curve(alg, lv);
  }
  return curves;
}

inline void write_fairness_tsv(const std::array<FairnessCurve, 3>& curves, std::ostream& out) {
  out << "area\tn_v\toptimum_ref";
  for (const FairnessCurve& curve : curves)
    out << '\t' << algorithm_name(curve.algorithm) << "_lv_over_k";
  out << '\n';
  const auto& base = curves[0].points;
  for (std::size_t p = 0; p < base.size(); ++p) {
    out << base[p].area << '\t' << base[p].n_v << '\t'
        << detail::format_fixed(base[p].optimum_ref);
    for (const FairnessCurve& curve : curves)
      out << '\t' << detail::format_fixed(curve.points[p].lv_over_k);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Cover size ranges: min cover size / max cover size across a parameter grid.

struct GridCell {
  std::uint32_t num_areas = 0;
  std::uint32_t num_subsets = 0;
  std::uint64_t num_edges = 0;
  std::uint32_t k = 0;
};

struct CoverRangeCell {
  GridCell params;
  std::array<double, 3> mean_range_ratio{};
  std::array<double, 3> min_range_ratio{};
};

inline const std::vector<GridCell> kDefaultCoverRangeGrid = {
    {200, 100, 1000, 2},  {200, 100, 1000, 5},  {200, 100, 1000, 10}, {200, 100, 1000, 15},
    {200, 100, 1000, 20}, {200, 100, 2000, 2},  {200, 100, 2000, 5},  {200, 100, 2000, 10},
    {200, 100, 2000, 15}, {200, 100, 2000, 20}, {200, 100, 4000, 2},  {200, 100, 4000, 5},
    {200, 100, 4000, 10}, {200, 100, 4000, 15}, {200, 100, 4000, 20}};

inline std::vector<CoverRangeCell> cover_range_study(const std::vector<GridCell>& grid,
                                                     std::uint32_t trials,
                                                     std::uint64_t seed) {
  std::vector<CoverRangeCell> cells;
  cells.reserve(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const GridCell& params = grid[c];
    const std::uint64_t cell_seed = derive_seed(seed, c);
    CoverRangeCell cell;
    cell.params = params;
    cell.min_range_ratio.fill(2.0);
    for (std::uint32_t trial = 0; trial < trials; ++trial) {
      const ProblemInstance instance =
          generate_instance(params.num_areas, params.num_subsets, params.num_edges, params.k,
                            derive_seed(cell_seed, 2 * trial));
      for (Algorithm alg : kAllAlgorithms) {
        const auto outcome =
            run_algorithm(alg, instance, derive_seed(cell_seed, 2 * trial + 1));
        const auto report = evaluate(instance, outcome.partition);
        const std::size_t a = algorithm_index(alg);
        cell.mean_range_ratio[a] += report.size_range_ratio;
        cell.min_range_ratio[a] = std::min(cell.min_range_ratio[a], report.size_range_ratio);
      }
    }
    for (std::size_t a = 0; a < 3; ++a) cell.mean_range_ratio[a] /= trials;
    cells.push_back(cell);
  }
  return cells;
}

inline void write_cover_range_tsv(const std::vector<CoverRangeCell>& cells, std::ostream& out) {
  out << "areas\tsubsets\tedges\tk";
  for (Algorithm alg : kAllAlgorithms) {
    const std::string name = algorithm_name(alg);
    out << '\t' << name << "_mean_range_ratio\t" << name << "_min_range_ratio";
  }
  out << '\n';
  for (const CoverRangeCell& cell : cells) {
    out << cell.params.num_areas << '\t' << cell.params.num_subsets << '\t'
        << cell.params.num_edges << '\t' << cell.params.k;
    for (std::size_t a = 0; a < 3; ++a)
      out << '\t' << detail::format_fixed(cell.mean_range_ratio[a]) << '\t'
          << detail::format_fixed(cell.min_range_ratio[a]);
    out << '\n';
  }
}

}  // namespace kcover

#endif  // KCOVER_EXPERIMENTS_HPP_
